use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use super::{Pair, PairMode};
use crate::corpus::Song;
use crate::genre::GenreTag;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("pair references unknown song {0}")]
pub struct StatsError(pub String);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenreRow {
    pub genre: GenreTag,
    /// Distinct lyricists across songs in this genre's pairs.
    pub authors: usize,
    pub pairs: usize,
    pub label0: usize,
    pub label1: usize,
    pub label0_pct: f64,
    pub label1_pct: f64,
    /// This genre's pair count as a share of all pair attributions.
    pub share_pct: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeRow {
    pub mode: PairMode,
    pub same: usize,
    pub diff: usize,
    pub total: usize,
    pub same_pct: f64,
    pub diff_pct: f64,
    pub total_pct: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairSetStats {
    pub genres: Vec<GenreRow>,
    pub types: Vec<TypeRow>,
    pub total_pairs: usize,
}

fn pct(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

/// Genre and pair-type breakdowns. A cross-genre pair counts once in each
/// of its two genre rows.
pub fn pairset_stats(pairs: &[Pair], songs: &[Song]) -> Result<PairSetStats, StatsError> {
    let by_id: HashMap<&str, &Song> = songs.iter().map(|s| (s.id.as_str(), s)).collect();
    let mut counts = [[0usize; 2]; 5];
    let mut authors: [BTreeSet<&str>; 5] = Default::default();
    let mut types = [[0usize; 2]; 2];

    for pair in pairs {
        let a = by_id
            .get(pair.a_id.as_str())
            .ok_or_else(|| StatsError(pair.a_id.clone()))?;
        let b = by_id
            .get(pair.b_id.as_str())
            .ok_or_else(|| StatsError(pair.b_id.clone()))?;
        let label = usize::from(pair.label.min(1));
        let mode = usize::from(pair.mode == PairMode::CrossGenre);
        types[mode][label] += 1;
        for genre in &pair.genres {
            let g = genre.index();
            counts[g][label] += 1;
            authors[g].extend(a.lyricists.iter().chain(&b.lyricists).map(String::as_str));
        }
    }

    let attributions: usize = counts.iter().map(|c| c[0] + c[1]).sum();
    let genres = GenreTag::ALL
        .iter()
        .map(|&genre| {
            let [label0, label1] = counts[genre.index()];
            let total = label0 + label1;
            GenreRow {
                genre,
                authors: authors[genre.index()].len(),
                pairs: total,
                label0,
                label1,
                label0_pct: pct(label0, total),
                label1_pct: pct(label1, total),
                share_pct: pct(total, attributions),
            }
        })
        .collect();
    let types = PairMode::ALL
        .iter()
        .enumerate()
        .map(|(m, &mode)| {
            let [diff, same] = types[m];
            TypeRow {
                mode,
                same,
                diff,
                total: same + diff,
                same_pct: pct(same, same + diff),
                diff_pct: pct(diff, same + diff),
                total_pct: pct(same + diff, pairs.len()),
            }
        })
        .collect();
    Ok(PairSetStats {
        genres,
        types,
        total_pairs: pairs.len(),
    })
}

impl PairSetStats {
    /// Markdown tables; percentages are rounded only here.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| Genre | Unique Authors | Pairs | Label 0 | Label 1 | Share |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for row in &self.genres {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} ({:.2}%) | {} ({:.2}%) | {:.2}% |",
                row.genre,
                row.authors,
                row.pairs,
                row.label0,
                row.label0_pct,
                row.label1,
                row.label1_pct,
                row.share_pct
            );
        }
        out.push('\n');
        out.push_str("| Pair Type | Same Author | Different Author | Total |\n");
        out.push_str("|---|---|---|---|\n");
        for row in &self.types {
            let _ = writeln!(
                out,
                "| {} | {} ({:.2}%) | {} ({:.2}%) | {} ({:.2}%) |",
                row.mode, row.same, row.same_pct, row.diff, row.diff_pct, row.total, row.total_pct
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Split;

    fn song(id: &str, author: &str, genres: &[GenreTag]) -> Song {
        Song {
            id: id.into(),
            title: id.into(),
            lyricists: vec![author.into()],
            lines: vec!["x".into()],
            length: 1,
            genres: genres.to_vec(),
            split: Split::Test2,
        }
    }

    #[test]
    fn empty_pairs_give_zero_tables() {
        let stats = pairset_stats(&[], &[]).unwrap();
        assert_eq!(stats.total_pairs, 0);
        assert!(stats.genres.iter().all(|r| r.pairs == 0 && r.label1_pct == 0.0));
        assert!(stats.types.iter().all(|r| r.total == 0));
    }

    #[test]
    fn single_folklore_positive() {
        let songs = [
            song("a", "x", &[GenreTag::FolkloreTradition]),
            song("b", "x", &[GenreTag::FolkloreTradition]),
        ];
        let pair = Pair {
            a_id: "a".into(),
            b_id: "b".into(),
            label: 1,
            mode: PairMode::PerGenre,
            genres: vec![GenreTag::FolkloreTradition],
            split: Split::Test2,
        };
        let stats = pairset_stats(std::slice::from_ref(&pair), &songs).unwrap();
        let row = &stats.genres[0];
        assert_eq!((row.pairs, row.label1, row.authors), (1, 1, 1));
        assert_eq!(row.label1_pct, 100.0);
        assert!(stats.to_markdown().contains("| 1 (100.00%) |"));

        let dangling = Pair {
            b_id: "zz".into(),
            ..pair
        };
        assert_eq!(pairset_stats(&[dangling], &songs), Err(StatsError("zz".into())));
    }

    #[test]
    fn type_table_percentages() {
        let mut songs = Vec::new();
        let mut pairs = Vec::new();
        for (mode, genres) in [
            (PairMode::PerGenre, vec![GenreTag::LoveRomance]),
            (
                PairMode::CrossGenre,
                vec![GenreTag::LoveRomance, GenreTag::LifeReflection],
            ),
        ] {
            for i in 0..34 {
                let a = format!("{mode}-{i}-a");
                let b = format!("{mode}-{i}-b");
                let same = i < 14;
                songs.push(song(&a, "p", &[genres[0]]));
                songs.push(song(&b, if same { "p" } else { "q" }, &[*genres.last().unwrap()]));
                pairs.push(Pair {
                    a_id: a,
                    b_id: b,
                    label: u8::from(same),
                    mode,
                    genres: genres.clone(),
                    split: Split::Test2,
                });
            }
        }
        let md = pairset_stats(&pairs, &songs).unwrap().to_markdown();
        assert!(md.contains("| per-genre | 14 (41.18%) | 20 (58.82%) |"), "{md}");
        assert!(md.contains("| cross-genre | 14 (41.18%) | 20 (58.82%) |"), "{md}");
    }
}
