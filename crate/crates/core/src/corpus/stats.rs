use serde::{Deserialize, Serialize};

use super::{CorpusError, Song};

/// How quartiles are read off a sorted sample.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantileMethod {
    /// Interpolate between the two neighbours of position `(n - 1) * p`.
    #[default]
    Linear,
    Lower,
    Higher,
    Midpoint,
}

/// Quantile `p` of an ascending sample. Panics on an empty sample.
pub fn quantile(sorted: &[f64], p: f64, method: QuantileMethod) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    let pos = (sorted.len() - 1) as f64 * p;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let (a, b) = (sorted[lo], sorted[hi]);
    match method {
        QuantileMethod::Linear => a + (pos - lo as f64) * (b - a),
        QuantileMethod::Lower => a,
        QuantileMethod::Higher => b,
        QuantileMethod::Midpoint => (a + b) / 2.0,
    }
}

/// Inclusive Tukey fences.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TukeyBounds {
    pub lower: f64,
    pub upper: f64,
}

impl TukeyBounds {
    pub fn from_quartiles(q1: f64, q3: f64) -> Self {
        let iqr = q3 - q1;
        Self {
            lower: q1 - 1.5 * iqr,
            upper: q3 + 1.5 * iqr,
        }
    }

    pub fn contains(&self, length: usize) -> bool {
        let length = length as f64;
        self.lower <= length && length <= self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub median: f64,
    pub mean: f64,
    pub max: usize,
    pub min: usize,
    pub q1: f64,
    pub q3: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub outlier_count: usize,
}

impl LengthStats {
    pub fn bounds(&self) -> TukeyBounds {
        TukeyBounds {
            lower: self.lower_bound,
            upper: self.upper_bound,
        }
    }
}

pub fn length_stats(songs: &[Song], method: QuantileMethod) -> Result<LengthStats, CorpusError> {
    let lengths: Vec<usize> = songs.iter().map(|s| s.length).collect();
    stats_for_lengths(&lengths, method)
}

pub(crate) fn stats_for_lengths(lengths: &[usize], method: QuantileMethod) -> Result<LengthStats, CorpusError> {
    if lengths.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut sorted: Vec<f64> = lengths.iter().map(|&l| l as f64).collect();
    sorted.sort_by(f64::total_cmp);

    let q1 = quantile(&sorted, 0.25, method);
    let q3 = quantile(&sorted, 0.75, method);
    let bounds = TukeyBounds::from_quartiles(q1, q3);
    let outlier_count = lengths.iter().filter(|&&l| !bounds.contains(l)).count();

    Ok(LengthStats {
        median: quantile(&sorted, 0.5, method),
        mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
        max: *lengths.iter().max().unwrap(),
        min: *lengths.iter().min().unwrap(),
        q1,
        q3,
        lower_bound: bounds.lower,
        upper_bound: bounds.upper,
        outlier_count,
    })
}

/// Splits songs into (kept, removed) by inclusive length bounds, preserving order.
pub fn filter_outliers(songs: Vec<Song>, bounds: TukeyBounds) -> (Vec<Song>, Vec<Song>) {
    songs.into_iter().partition(|song| bounds.contains(song.length))
}
