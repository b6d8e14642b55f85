use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    cosine_similarity, encode, featurize, loss_gradient, ContrastiveError, EncoderParams, FeatureVector,
    TrainingExample,
};
use crate::corpus::Song;
use crate::evaluation::{default_grid, sweep_threshold};
use crate::pairs::Pair;

/// Optimization settings. The default learning rate suits a pretrained
/// transformer; the projection encoder usually wants something larger.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainingConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub warmup_steps: usize,
    pub eval_interval_steps: usize,
    pub validation_fraction: f64,
    pub seed: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            epochs: 2,
            learning_rate: 2e-5,
            batch_size: 16,
            warmup_steps: 100,
            eval_interval_steps: 50,
            validation_fraction: 0.2,
            seed: 0,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

impl TrainingConfig {
    pub fn validate(&self) -> Result<(), ContrastiveError> {
        let fail = |m: &str| Err(ContrastiveError::InvalidConfig(m.to_string()));
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return fail("learning_rate must be positive");
        }
        if self.batch_size == 0 || self.eval_interval_steps == 0 {
            return fail("batch_size and eval_interval_steps must be positive");
        }
        if !(self.validation_fraction > 0.0 && self.validation_fraction < 1.0) {
            return fail("validation_fraction must be in (0, 1)");
        }
        if !(0.0..1.0).contains(&self.beta1) || !(0.0..1.0).contains(&self.beta2) || self.epsilon <= 0.0 {
            return fail("Adam betas must be in [0, 1) and epsilon positive");
        }
        Ok(())
    }

    fn rate_at(&self, step: usize) -> f64 {
        if self.warmup_steps == 0 || step >= self.warmup_steps {
            self.learning_rate
        } else {
            self.learning_rate * step as f64 / self.warmup_steps as f64
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub step: usize,
    pub threshold: f64,
    pub macro_f1: f64,
}

/// The selected decision threshold and how it was found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdModel {
    pub threshold: f64,
    pub best_validation_macro_f1: f64,
    pub history: Vec<HistoryEntry>,
}

impl ThresholdModel {
    /// A later evaluation that ties the best replaces it, so the threshold
    /// follows the most recent parameters among equally good ones.
    fn record(&mut self, entry: HistoryEntry) {
        if self.history.is_empty() || entry.macro_f1 >= self.best_validation_macro_f1 {
            self.threshold = entry.threshold;
            self.best_validation_macro_f1 = entry.macro_f1;
        }
        self.history.push(entry);
    }
}

struct Adam {
    m: Vec<f64>,
    v: Vec<f64>,
    t: i32,
}

impl Adam {
    fn new(size: usize) -> Self {
        Self {
            m: vec![0.0; size],
            v: vec![0.0; size],
            t: 0,
        }
    }

    fn step(&mut self, weights: &mut [f64], grad: &[f64], lr: f64, config: &TrainingConfig) {
        self.t += 1;
        let (b1, b2) = (config.beta1, config.beta2);
        let c1 = 1.0 - b1.powi(self.t);
        let c2 = 1.0 - b2.powi(self.t);
        for (((w, g), m), v) in weights.iter_mut().zip(grad).zip(&mut self.m).zip(&mut self.v) {
            *m = b1 * *m + (1.0 - b1) * g;
            *v = b2 * *v + (1.0 - b2) * g * g;
            *w -= lr * (*m / c1) / ((*v / c2).sqrt() + config.epsilon);
        }
    }
}

fn validation_sweep(
    params: &EncoderParams,
    val: &[(usize, usize, u8)],
    features: &[FeatureVector],
    step: usize,
) -> Result<HistoryEntry, ContrastiveError> {
    let embeddings: HashMap<usize, Vec<f64>> = val
        .iter()
        .flat_map(|&(a, b, _)| [a, b])
        .map(|i| encode(params, &features[i]).map(|e| (i, e)))
        .collect::<Result<_, _>>()?;
    let sims = val
        .iter()
        .map(|(a, b, _)| cosine_similarity(&embeddings[a], &embeddings[b]))
        .collect::<Result<Vec<_>, _>>()?;
    let labels: Vec<u8> = val.iter().map(|t| t.2).collect();
    let (threshold, macro_f1) =
        sweep_threshold(&sims, &labels, &default_grid()).expect("validation set is nonempty and binary");
    Ok(HistoryEntry {
        step,
        threshold,
        macro_f1,
    })
}

fn class_check(part: &[(usize, usize, u8)], name: &str) -> Result<(), ContrastiveError> {
    let positives = part.iter().filter(|t| t.2 == 1).count();
    if positives == 0 || positives == part.len() {
        return Err(ContrastiveError::DegenerateSplit(format!(
            "{name} split has a single class ({} pairs); try another seed or validation fraction",
            part.len()
        )));
    }
    Ok(())
}

/// Seeded mini-batch Adam on the contrastive loss with linear warmup.
///
/// Pairs are shuffled and the first `validation_fraction` of them held out.
/// Every `eval_interval_steps` optimizer steps, and once more at the end,
/// the validation similarities are swept for the best macro-F1 threshold.
/// Returns the final parameters and the best threshold seen (latest on ties).
pub fn train(
    pairs: &[Pair],
    songs: &[Song],
    params: EncoderParams,
    config: &TrainingConfig,
) -> Result<(EncoderParams, ThresholdModel), ContrastiveError> {
    params.validate()?;
    config.validate()?;
    let index: HashMap<&str, usize> = songs.iter().enumerate().map(|(i, s)| (s.id.as_str(), i)).collect();
    let lookup = |id: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| ContrastiveError::UnknownSong(id.to_string()))
    };
    let mut triples = pairs
        .iter()
        .map(|p| Ok((lookup(&p.a_id)?, lookup(&p.b_id)?, p.label)))
        .collect::<Result<Vec<_>, ContrastiveError>>()?;
    let features: Vec<FeatureVector> = songs.iter().map(|s| featurize(s, &params)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    triples.shuffle(&mut rng);
    let n_val = ((triples.len() as f64 * config.validation_fraction).round() as usize).clamp(1, triples.len());
    let (val, train_part) = triples.split_at(n_val);
    class_check(val, "validation")?;
    class_check(train_part, "training")?;

    let mut params = params;
    let mut model = ThresholdModel {
        threshold: 0.0,
        best_validation_macro_f1: 0.0,
        history: Vec::new(),
    };
    let mut adam = Adam::new(params.projection.len());
    let mut order: Vec<usize> = (0..train_part.len()).collect();
    let mut step = 0;
    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for chunk in order.chunks(config.batch_size) {
            let batch: Vec<TrainingExample> = chunk
                .iter()
                .map(|&k| {
                    let (a, b, label) = train_part[k];
                    TrainingExample {
                        a: &features[a],
                        b: &features[b],
                        label,
                    }
                })
                .collect();
            let grad = loss_gradient(&params, &batch)?;
            step += 1;
            adam.step(&mut params.projection, &grad, config.rate_at(step), config);
            if step % config.eval_interval_steps == 0 {
                model.record(validation_sweep(&params, val, &features, step)?);
            }
        }
    }
    if model.history.last().is_none_or(|h| h.step != step) {
        model.record(validation_sweep(&params, val, &features, step)?);
    }
    Ok((params, model))
}
