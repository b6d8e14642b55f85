use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{ContrastiveError, FeatureVector};

/// Projection encoder. `projection` is `feature_dim × embed_dim`, row-major,
/// so row `i` holds the weights of feature bucket `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EncoderParams {
    pub feature_dim: usize,
    pub embed_dim: usize,
    pub margin: f64,
    pub hash_seed: u64,
    pub max_seq_len: usize,
    pub projection: Vec<f64>,
}

impl Default for EncoderParams {
    fn default() -> Self {
        Self::init(4096, 256, 0.5, 0, 128, 0)
    }
}

impl EncoderParams {
    /// Gaussian projection with standard deviation `1/sqrt(feature_dim)`.
    pub fn init(
        feature_dim: usize,
        embed_dim: usize,
        margin: f64,
        hash_seed: u64,
        max_seq_len: usize,
        init_seed: u64,
    ) -> Self {
        let std = 1.0 / (feature_dim.max(1) as f64).sqrt();
        let normal = Normal::new(0.0, std).expect("positive std");
        let mut rng = ChaCha8Rng::seed_from_u64(init_seed);
        let projection = (0..feature_dim * embed_dim).map(|_| normal.sample(&mut rng)).collect();
        Self {
            feature_dim,
            embed_dim,
            margin,
            hash_seed,
            max_seq_len,
            projection,
        }
    }

    pub fn validate(&self) -> Result<(), ContrastiveError> {
        let fail = |m: String| Err(ContrastiveError::InvalidParams(m));
        if self.feature_dim == 0 || self.embed_dim == 0 {
            return fail("dimensions must be positive".into());
        }
        if !(self.margin > 0.0 && self.margin <= 2.0) {
            return fail(format!("margin must be in (0, 2], got {}", self.margin));
        }
        if self.max_seq_len == 0 {
            return fail("max_seq_len must be positive".into());
        }
        if self.projection.len() != self.feature_dim * self.embed_dim {
            return fail(format!(
                "projection has {} entries, expected {}",
                self.projection.len(),
                self.feature_dim * self.embed_dim
            ));
        }
        if self.projection.iter().any(|w| !w.is_finite()) {
            return fail("projection has non-finite entries".into());
        }
        Ok(())
    }

    pub(crate) fn project(&self, features: &FeatureVector) -> Result<Vec<f64>, ContrastiveError> {
        if features.dim() != self.feature_dim {
            return Err(ContrastiveError::DimensionMismatch {
                expected: self.feature_dim,
                actual: features.dim(),
            });
        }
        let d = self.embed_dim;
        let mut z = vec![0.0; d];
        for (i, x) in features.nonzeros() {
            let row = &self.projection[i * d..(i + 1) * d];
            for (zj, w) in z.iter_mut().zip(row) {
                *zj += x * w;
            }
        }
        Ok(z)
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `L2-normalize(projectionᵀ · features)`; a zero projection stays zero.
pub fn encode(params: &EncoderParams, features: &FeatureVector) -> Result<Vec<f64>, ContrastiveError> {
    let mut z = params.project(features)?;
    let n = norm(&z);
    if n > 0.0 {
        z.iter_mut().for_each(|x| *x /= n);
    }
    Ok(z)
}

/// Cosine similarity clamped to [−1, 1]; 0 when either vector is zero.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64, ContrastiveError> {
    if u.len() != v.len() {
        return Err(ContrastiveError::DimensionMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    let (nu, nv) = (norm(u), norm(v));
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}
