use super::encoder::norm;
use super::{ContrastiveError, EncoderParams, FeatureVector};

/// One labeled pair of feature vectors.
#[derive(Clone, Copy, Debug)]
pub struct TrainingExample<'a> {
    pub a: &'a FeatureVector,
    pub b: &'a FeatureVector,
    pub label: u8,
}

/// `y·d² + (1−y)·max(0, margin − d)²` with `d = 1 − similarity`.
pub fn contrastive_loss(label: u8, similarity: f64, margin: f64) -> f64 {
    let d = 1.0 - similarity;
    if label == 1 {
        d * d
    } else {
        let slack = (margin - d).max(0.0);
        slack * slack
    }
}

fn raw_cosine(za: &[f64], zb: &[f64]) -> Option<(f64, f64, f64)> {
    let (na, nb) = (norm(za), norm(zb));
    if na == 0.0 || nb == 0.0 {
        return None;
    }
    let dot: f64 = za.iter().zip(zb).map(|(x, y)| x * y).sum();
    Some((dot / (na * nb), na, nb))
}

/// Mean loss over `batch`, using the unclamped cosine of the projections.
pub fn batch_loss(params: &EncoderParams, batch: &[TrainingExample]) -> Result<f64, ContrastiveError> {
    let mut total = 0.0;
    for ex in batch {
        let za = params.project(ex.a)?;
        let zb = params.project(ex.b)?;
        let s = raw_cosine(&za, &zb).map_or(0.0, |(s, _, _)| s);
        total += contrastive_loss(ex.label, s, params.margin);
    }
    Ok(total / batch.len().max(1) as f64)
}

/// Gradient of the mean batch loss with respect to the projection,
/// row-major like `EncoderParams::projection`. Pairs where either
/// projection is zero contribute nothing.
pub fn loss_gradient(params: &EncoderParams, batch: &[TrainingExample]) -> Result<Vec<f64>, ContrastiveError> {
    let d = params.embed_dim;
    let mut grad = vec![0.0; params.projection.len()];
    if batch.is_empty() {
        return Ok(grad);
    }
    let scale = 1.0 / batch.len() as f64;
    for ex in batch {
        let za = params.project(ex.a)?;
        let zb = params.project(ex.b)?;
        let Some((s, na, nb)) = raw_cosine(&za, &zb) else {
            continue;
        };
        let dist = 1.0 - s;
        let dl_ds = if ex.label == 1 {
            -2.0 * dist
        } else if params.margin - dist > 0.0 {
            2.0 * (params.margin - dist)
        } else {
            0.0
        };
        if dl_ds == 0.0 {
            continue;
        }
        // ∂s/∂z_a = (ê_b − s·ê_a) / ‖z_a‖, symmetric for b.
        let ga: Vec<f64> = (0..d)
            .map(|j| scale * dl_ds * (zb[j] / nb - s * za[j] / na) / na)
            .collect();
        let gb: Vec<f64> = (0..d)
            .map(|j| scale * dl_ds * (za[j] / na - s * zb[j] / nb) / nb)
            .collect();
        for (x, g) in [(ex.a, &ga), (ex.b, &gb)] {
            for (i, xi) in x.nonzeros() {
                let row = &mut grad[i * d..(i + 1) * d];
                for (r, gj) in row.iter_mut().zip(g) {
                    *r += xi * gj;
                }
            }
        }
    }
    Ok(grad)
}
