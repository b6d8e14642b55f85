use serde::{Deserialize, Serialize};

use super::EvalError;

/// Confusion counts with label 1 as the positive class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl ConfusionCounts {
    pub fn from_labels(truth: &[u8], predicted: &[u8]) -> Result<Self, EvalError> {
        if truth.len() != predicted.len() {
            return Err(EvalError::LengthMismatch {
                left: truth.len(),
                right: predicted.len(),
            });
        }
        let mut counts = ConfusionCounts::default();
        for (&t, &p) in truth.iter().zip(predicted) {
            match (t, p) {
                (1, 1) => counts.tp += 1,
                (0, 1) => counts.fp += 1,
                (0, 0) => counts.tn += 1,
                (1, 0) => counts.fn_ += 1,
                (bad, _) if bad > 1 => return Err(EvalError::InvalidLabel(bad)),
                (_, bad) => return Err(EvalError::InvalidLabel(bad)),
            }
        }
        Ok(counts)
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// Counts seen from the negative class's side.
    fn flipped(&self) -> Self {
        Self {
            tp: self.tn,
            fp: self.fn_,
            tn: self.tp,
            fn_: self.fp,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl ClassMetrics {
    fn positive_class(c: &ConfusionCounts) -> Self {
        Self {
            precision: ratio(c.tp, c.tp + c.fp),
            recall: ratio(c.tp, c.tp + c.fn_),
            f1: ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn_),
            support: c.tp + c.fn_,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub confusion: ConfusionCounts,
    pub accuracy: f64,
    pub f1_micro: f64,
    pub f1_weighted: f64,
    pub f1_macro: f64,
    /// Positive-class recall.
    pub recall: f64,
    /// Positive-class precision.
    pub precision: f64,
    /// Index 0 is the different-author class, index 1 same-author.
    pub per_class: [ClassMetrics; 2],
}

impl Metrics {
    pub fn from_counts(confusion: ConfusionCounts) -> Result<Self, EvalError> {
        let n = confusion.total();
        if n == 0 {
            return Err(EvalError::Empty);
        }
        let positive = ClassMetrics::positive_class(&confusion);
        let negative = ClassMetrics::positive_class(&confusion.flipped());

        let correct = confusion.tp + confusion.tn;
        let wrong = confusion.fp + confusion.fn_;
        let accuracy = ratio(correct, n);
        // pooled over both classes: TP = correct, FP = FN = wrong
        let f1_micro = ratio(2 * correct, 2 * correct + 2 * wrong);
        assert_eq!(f1_micro, accuracy, "micro F1 must equal accuracy");

        let f1_weighted = (negative.f1 * negative.support as f64 + positive.f1 * positive.support as f64) / n as f64;
        // Classes absent from both truth and predictions are left out of the
        // macro mean, so an all-positive, all-correct slice scores 1.
        let present: Vec<f64> = [
            (&negative, confusion.tn + confusion.fn_),
            (&positive, confusion.tp + confusion.fp),
        ]
        .into_iter()
        .filter(|(class, predicted)| class.support + predicted > 0)
        .map(|(class, _)| class.f1)
        .collect();
        let f1_macro = present.iter().sum::<f64>() / present.len() as f64;

        Ok(Self {
            confusion,
            accuracy,
            f1_micro,
            f1_weighted,
            f1_macro,
            recall: positive.recall,
            precision: positive.precision,
            per_class: [negative, positive],
        })
    }

    pub fn support(&self) -> usize {
        self.confusion.total()
    }
}

/// Accuracy, micro/weighted/macro F1 and positive-class precision/recall.
/// Any 0/0 ratio is 0. The macro mean covers the classes that occur in
/// either the truth or the predictions.
pub fn compute_metrics(truth: &[u8], predicted: &[u8]) -> Result<Metrics, EvalError> {
    if truth.is_empty() && predicted.is_empty() {
        return Err(EvalError::Empty);
    }
    Metrics::from_counts(ConfusionCounts::from_labels(truth, predicted)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_positive(pos: usize, neg: usize) -> Metrics {
        let mut truth = vec![1u8; pos];
        truth.extend(vec![0u8; neg]);
        compute_metrics(&truth, &vec![1u8; pos + neg]).unwrap()
    }

    fn assert_row(m: &Metrics, expected: [f64; 5]) {
        let got = [m.accuracy, m.f1_weighted, m.f1_macro, m.recall, m.precision];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 5e-5, "got {got:?}, expected {expected:?}");
        }
    }

    #[test]
    fn degenerate_reference_rows() {
        assert_row(&all_positive(5, 3), [0.6250, 0.4808, 0.3846, 1.0, 0.6250]);
        assert_row(&all_positive(1, 7), [0.1250, 0.0278, 0.1111, 1.0, 0.1250]);
        assert_row(&all_positive(6, 7), [0.4615, 0.2915, 0.3158, 1.0, 0.4615]);
    }

    #[test]
    fn single_class_slice_ignores_absent_class() {
        let m = all_positive(1, 0);
        assert_eq!((m.f1_macro, m.f1_weighted, m.precision), (1.0, 1.0, 1.0));
        // Class 0 is predicted but never true: it still counts, with F1 0.
        let m = compute_metrics(&[1, 1], &[1, 0]).unwrap();
        assert!((m.f1_macro - (2.0 / 3.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_predictions() {
        let truth = [1, 0, 1, 1, 0];
        let m = compute_metrics(&truth, &truth).unwrap();
        for v in [m.accuracy, m.f1_micro, m.f1_weighted, m.f1_macro, m.recall, m.precision] {
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn error_paths() {
        assert_eq!(compute_metrics(&[], &[]), Err(EvalError::Empty));
        assert_eq!(
            compute_metrics(&[1], &[1, 0]),
            Err(EvalError::LengthMismatch { left: 1, right: 2 })
        );
        assert_eq!(compute_metrics(&[2], &[1]), Err(EvalError::InvalidLabel(2)));
    }

    #[test]
    fn no_positive_predictions_zero_precision() {
        let m = compute_metrics(&[1, 0], &[0, 0]).unwrap();
        assert_eq!(m.precision, 0.0);
        assert_eq!(m.recall, 0.0);
        assert_eq!(m.accuracy, 0.5);
    }
}
