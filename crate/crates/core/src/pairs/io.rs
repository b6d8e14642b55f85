use std::collections::HashSet;
use std::path::Path;

use super::Pair;
use crate::jsonl::{read_jsonl, write_jsonl, JsonlError};

#[derive(Debug, thiserror::Error)]
pub enum PairIoError {
    #[error(transparent)]
    Jsonl(#[from] JsonlError),
}

/// Reads a pair file, rejecting invalid records and repeated unordered pairs.
pub fn load_pairs(path: impl AsRef<Path>) -> Result<Vec<Pair>, PairIoError> {
    let mut seen = HashSet::new();
    Ok(read_jsonl(path.as_ref(), |_, line| {
        let pair: Pair = serde_json::from_str(line).map_err(|e| e.to_string())?;
        pair.validate()?;
        if !seen.insert(pair.key()) {
            return Err(format!("duplicate pair {} / {}", pair.a_id, pair.b_id));
        }
        Ok(pair)
    })?)
}

pub fn save_pairs(pairs: &[Pair], path: impl AsRef<Path>) -> Result<(), PairIoError> {
    let path = path.as_ref();
    let mut seen = HashSet::new();
    for (idx, pair) in pairs.iter().enumerate() {
        pair.validate().map_err(|m| JsonlError::record(path, idx + 1, m))?;
        if !seen.insert(pair.key()) {
            return Err(JsonlError::record(path, idx + 1, "duplicate pair").into());
        }
    }
    Ok(write_jsonl(path, pairs)?)
}
