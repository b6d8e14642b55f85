//! Brute-force reference implementations used to check the library.

use std::collections::HashSet;

use lyricav::{Pair, PairMode, Song};

/// Counts (tp, fp, tn, fn) with one pass per cell.
pub fn confusion(truth: &[u8], pred: &[u8]) -> [usize; 4] {
    let cell = |t: u8, p: u8| truth.iter().zip(pred).filter(|&(&a, &b)| a == t && b == p).count();
    [cell(1, 1), cell(0, 1), cell(0, 0), cell(1, 0)]
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// accuracy, f1 micro, f1 weighted, f1 macro, recall, precision, from
/// per-class precision and recall.
pub fn metrics(truth: &[u8], pred: &[u8]) -> [f64; 6] {
    let n = truth.len();
    let mut f1 = [0.0; 2];
    let mut support = [0usize; 2];
    let mut present = [false; 2];
    for class in 0..2u8 {
        let hit = truth
            .iter()
            .zip(pred)
            .filter(|&(&t, &p)| t == class && p == class)
            .count();
        let predicted = pred.iter().filter(|&&p| p == class).count();
        let actual = truth.iter().filter(|&&t| t == class).count();
        let precision = ratio(hit, predicted);
        let recall = ratio(hit, actual);
        f1[class as usize] = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        support[class as usize] = actual;
        present[class as usize] = truth.contains(&class) || pred.contains(&class);
    }
    let present_f1: Vec<f64> = (0..2).filter(|&c| present[c]).map(|c| f1[c]).collect();
    let [tp, fp, tn, fn_] = confusion(truth, pred);
    let accuracy = ratio(tp + tn, n);
    // Pooled micro F1 over both classes: every item is one TP or one FP+FN.
    let micro_tp = tp + tn;
    let micro_f1 = ratio(2 * micro_tp, 2 * micro_tp + 2 * (fp + fn_));
    [
        accuracy,
        micro_f1,
        (f1[0] * support[0] as f64 + f1[1] * support[1] as f64) / n as f64,
        present_f1.iter().sum::<f64>() / present_f1.len() as f64,
        ratio(tp, tp + fn_),
        ratio(tp, tp + fp),
    ]
}

/// Linear-interpolation quantile by sorting a copy.
pub fn quantile(values: &[usize], p: f64) -> f64 {
    let mut sorted: Vec<f64> = values.iter().map(|&v| v as f64).collect();
    sorted.sort_by(f64::total_cmp);
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Macro F1 as an exact fraction (numerator, denominator).
pub fn macro_f1_exact(truth: &[u8], pred: &[u8]) -> (u128, u128) {
    let mut sum = (0u128, 1u128);
    let mut classes = 0;
    for class in 0..2u8 {
        if !truth.contains(&class) && !pred.contains(&class) {
            continue;
        }
        classes += 1;
        let hit = truth
            .iter()
            .zip(pred)
            .filter(|&(&t, &p)| t == class && p == class)
            .count() as u128;
        let wrong_pred = pred
            .iter()
            .zip(truth)
            .filter(|&(&p, &t)| p == class && t != class)
            .count() as u128;
        let missed = truth
            .iter()
            .zip(pred)
            .filter(|&(&t, &p)| t == class && p != class)
            .count() as u128;
        let (num, den) = (2 * hit, 2 * hit + wrong_pred + missed);
        if num > 0 {
            sum = (sum.0 * den + num * sum.1, sum.1 * den);
        }
    }
    (sum.0, sum.1 * classes)
}

/// Exact macro-F1 maximum over the grid, smallest threshold among ties.
pub fn best_threshold(sims: &[f64], labels: &[u8], grid: &[f64]) -> (f64, f64) {
    let mut best: Option<(f64, (u128, u128))> = None;
    for &t in grid {
        let pred: Vec<u8> = sims.iter().map(|&s| u8::from(s >= t)).collect();
        let f1 = macro_f1_exact(labels, &pred);
        let better = match best {
            None => true,
            Some((bt, (bn, bd))) => {
                let (lhs, rhs) = (f1.0 * bd, bn * f1.1);
                lhs > rhs || (lhs == rhs && t < bt)
            }
        };
        if better {
            best = Some((t, f1));
        }
    }
    let (t, (n, d)) = best.unwrap();
    (t, n as f64 / d as f64)
}

/// Every structural rule a pair set must obey; returns the first violation.
pub fn check_pairs(pairs: &[Pair], songs: &[Song]) -> Result<(), String> {
    let find = |id: &str| songs.iter().find(|s| s.id == id).ok_or(format!("unknown song {id}"));
    let mut seen = HashSet::new();
    for p in pairs {
        if p.a_id == p.b_id {
            return Err(format!("self pair {}", p.a_id));
        }
        let key = if p.a_id < p.b_id {
            (p.a_id.clone(), p.b_id.clone())
        } else {
            (p.b_id.clone(), p.a_id.clone())
        };
        if !seen.insert(key) {
            return Err(format!("duplicate pair {} {}", p.a_id, p.b_id));
        }
        let (a, b) = (find(&p.a_id)?, find(&p.b_id)?);
        let shared = a.lyricists.iter().any(|x| b.lyricists.iter().any(|y| x == y));
        if p.label != u8::from(shared) {
            return Err(format!("label {} wrong for {} {}", p.label, p.a_id, p.b_id));
        }
        match p.mode {
            PairMode::PerGenre => {
                if p.genres.len() != 1 || !a.genres.contains(&p.genres[0]) || !b.genres.contains(&p.genres[0]) {
                    return Err(format!(
                        "per-genre attribution {:?} for {} {}",
                        p.genres, p.a_id, p.b_id
                    ));
                }
            }
            PairMode::CrossGenre => {
                let ok = p.genres.len() == 2
                    && p.genres[0] != p.genres[1]
                    && a.genres.contains(&p.genres[0])
                    && b.genres.contains(&p.genres[1]);
                let mut sa = a.genres.clone();
                let mut sb = b.genres.clone();
                sa.sort();
                sb.sort();
                if !ok || sa == sb {
                    return Err(format!(
                        "cross-genre attribution {:?} for {} {}",
                        p.genres, p.a_id, p.b_id
                    ));
                }
            }
        }
    }
    Ok(())
}
