//! A small siamese verifier: hashed stylometric features, a trainable linear
//! projection, contrastive loss over cosine distance and threshold selection
//! on a held-out slice of the training pairs.

mod encoder;
mod features;
mod loss;
mod model_io;
mod predict;
mod train;

pub use encoder::{cosine_similarity, encode, EncoderParams};
pub use features::{featurize, featurize_text, FeatureVector};
pub use loss::{batch_loss, contrastive_loss, loss_gradient, TrainingExample};
pub use model_io::{
    load_history_csv, load_model, save_history_csv, save_model, ModelFile, MODEL_FORMAT, MODEL_VERSION,
};
pub use predict::{pair_similarities, predict};
pub use train::{train, HistoryEntry, ThresholdModel, TrainingConfig};

#[derive(Debug, thiserror::Error)]
pub enum ContrastiveError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid encoder parameters: {0}")]
    InvalidParams(String),
    #[error("invalid training config: {0}")]
    InvalidConfig(String),
    #[error("pair references unknown song {0}")]
    UnknownSong(String),
    #[error("{0}")]
    DegenerateSplit(String),
    #[error("model file {path}: {message}")]
    Model { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
