//! Authorship verification toolkit for cross-genre Chinese lyrics.
//!
//! The pipeline runs corpus cleaning and outlier filtering, LLM genre
//! labeling, balanced pair construction, zero-shot and contrastive verifiers,
//! and per-genre evaluation reports.

pub mod contrastive;
pub mod corpus;
pub mod evaluation;
pub mod gateway;
pub mod genre;
pub mod jsonl;
pub mod pairs;
pub mod text;
pub mod zeroshot;

pub use corpus::{Song, Split};
pub use genre::{GenreTag, PromptLanguage};
pub use pairs::{Pair, PairMode};
