use serde::{Deserialize, Serialize};
use xxhash_rust::xxh3::xxh3_64_with_seed;

use super::EncoderParams;
use crate::corpus::Song;

const CJK_PUNCTUATION: &str = "，。！？、；：「」『』（）《》〈〉【】…—～·“”‘’";

/// Dense hashed feature vector; entries are nonnegative and finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().copied().enumerate().filter(|&(_, v)| v != 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }
}

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation() || CJK_PUNCTUATION.contains(c)
}

/// Features of a song's lines joined with newlines.
pub fn featurize(song: &Song, params: &EncoderParams) -> FeatureVector {
    featurize_text(&song.lines.join("\n"), params)
}

/// Character 1–3-gram counts, punctuation frequencies and line-length
/// summaries of the first `max_seq_len` characters, each hashed into the
/// same buckets under a distinct key prefix and divided by character count.
pub fn featurize_text(text: &str, params: &EncoderParams) -> FeatureVector {
    let dim = params.feature_dim;
    let mut values = vec![0.0; dim];
    let chars: Vec<char> = text.chars().take(params.max_seq_len).collect();
    if chars.is_empty() || dim == 0 {
        return FeatureVector { values };
    }
    let unit = 1.0 / chars.len() as f64;
    let mut add = |key: &str, amount: f64| {
        let bucket = (xxh3_64_with_seed(key.as_bytes(), params.hash_seed) % dim as u64) as usize;
        values[bucket] += amount;
    };

    let mut key = String::new();
    for n in 1..=3 {
        for window in chars.windows(n) {
            key.clear();
            key.push_str(["g1:", "g2:", "g3:"][n - 1]);
            key.extend(window);
            add(&key, unit);
        }
    }

    let mut punctuation = 0usize;
    for &c in chars.iter().filter(|&&c| is_punctuation(c)) {
        punctuation += 1;
        add(&format!("p:{c}"), unit);
    }
    add("p:*", punctuation as f64 * unit);

    let truncated: String = chars.iter().collect();
    let lengths: Vec<usize> = truncated.split('\n').map(|l| l.chars().count()).collect();
    let total: usize = lengths.iter().sum();
    let longest = lengths.iter().copied().max().unwrap_or(0);
    add("l:count", lengths.len() as f64 * unit);
    add("l:mean", total as f64 / lengths.len() as f64 * unit);
    add("l:max", longest as f64 * unit);

    FeatureVector { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> EncoderParams {
        EncoderParams::init(512, 8, 0.5, 7, 128, 1)
    }

    #[test]
    fn deterministic_and_truncated() {
        let p = params();
        let base: String = "月光下的小河".repeat(30);
        assert_eq!(featurize_text(&base, &p), featurize_text(&base, &p));
        let head: String = base.chars().take(128).collect();
        assert_eq!(featurize_text(&head, &p), featurize_text(&format!("{head}尾巴"), &p));
    }

    #[test]
    fn single_char_difference_changes_a_bucket() {
        let p = params();
        let bucket = |key: &str| (xxh3_64_with_seed(key.as_bytes(), 7) % 512) as usize;
        let aa = featurize_text("aa", &p);
        let ab = featurize_text("ab", &p);
        assert_ne!(aa, ab);
        // "aa" puts both unigram counts in the bucket of "g1:a"; "ab" splits them.
        assert!(aa.values[bucket("g1:a")] >= 1.0);
        assert!(ab.values[bucket("g1:b")] >= 0.5);
    }

    #[test]
    fn entries_nonnegative_and_finite() {
        let v = featurize_text("你好，世界！\nhello, world", &params());
        assert!(v.values.iter().all(|x| x.is_finite() && *x >= 0.0));
        assert!(featurize_text("", &params()).values.iter().all(|x| *x == 0.0));
    }
}
