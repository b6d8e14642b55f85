use super::{compute_metrics, EvalError};

/// −1.00 to 1.00 in steps of 0.01.
pub fn default_grid() -> Vec<f64> {
    (0..=200).map(|i| (i as f64 - 100.0) / 100.0).collect()
}

/// Same-author iff the similarity reaches the threshold.
pub fn predict_at(similarity: f64, threshold: f64) -> u8 {
    u8::from(similarity >= threshold)
}

/// Scores closer than this are ties; equal F1 values reached through
/// different confusion counts can differ in the last bits.
const TIE_TOLERANCE: f64 = 1e-12;

/// Grid point with the highest macro F1; ties go to the smallest threshold.
pub fn sweep_threshold(similarities: &[f64], labels: &[u8], grid: &[f64]) -> Result<(f64, f64), EvalError> {
    if similarities.is_empty() || labels.is_empty() {
        return Err(EvalError::Empty);
    }
    if similarities.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            left: similarities.len(),
            right: labels.len(),
        });
    }
    if grid.is_empty() {
        return Err(EvalError::EmptyGrid);
    }
    let mut best: Option<(f64, f64)> = None;
    let mut predictions = vec![0u8; similarities.len()];
    for &threshold in grid {
        for (p, &s) in predictions.iter_mut().zip(similarities) {
            *p = predict_at(s, threshold);
        }
        let f1 = compute_metrics(labels, &predictions)?.f1_macro;
        best = match best {
            Some((t, b)) if f1 < b - TIE_TOLERANCE || (f1 <= b + TIE_TOLERANCE && t <= threshold) => Some((t, b)),
            _ => Some((threshold, f1)),
        };
    }
    Ok(best.expect("grid nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_pair_picks_smallest_point_above_negative() {
        let (t, f1) = sweep_threshold(&[0.9, 0.1], &[1, 0], &default_grid()).unwrap();
        assert_eq!(t, 0.11);
        assert_eq!(f1, 1.0);
    }

    #[test]
    fn all_positive_labels_choose_minus_one() {
        let (t, _) = sweep_threshold(&[0.3, -0.2, 0.8], &[1, 1, 1], &default_grid()).unwrap();
        assert_eq!(t, -1.0);
    }

    #[test]
    fn single_point_grid() {
        let (t, _) = sweep_threshold(&[0.3], &[0], &[0.42]).unwrap();
        assert_eq!(t, 0.42);
    }

    #[test]
    fn grid_shape() {
        let grid = default_grid();
        assert_eq!(grid.len(), 201);
        assert_eq!(grid[0], -1.0);
        assert_eq!(grid[200], 1.0);
        assert_eq!(grid[100], 0.0);
    }

    #[test]
    fn errors() {
        assert_eq!(sweep_threshold(&[], &[], &[0.0]), Err(EvalError::Empty));
        assert_eq!(sweep_threshold(&[0.1], &[1], &[]), Err(EvalError::EmptyGrid));
    }
}
