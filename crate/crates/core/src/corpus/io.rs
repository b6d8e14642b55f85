use std::collections::HashSet;
use std::path::{Path, PathBuf};

use super::{RawSong, Song};
use crate::jsonl::{read_jsonl, write_jsonl, JsonlError};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error(transparent)]
    Jsonl(#[from] JsonlError),
    #[error("{path}:{line}: duplicate id {id}")]
    DuplicateId { path: PathBuf, line: usize, id: String },
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<Song>, CorpusError> {
    let path = path.as_ref();
    let mut seen = HashSet::new();
    let mut duplicate = None;
    let songs = read_jsonl(path, |line_no, line| {
        let song: Song = serde_json::from_str(line).map_err(|e| e.to_string())?;
        song.validate()?;
        if !seen.insert(song.id.clone()) && duplicate.is_none() {
            duplicate = Some((line_no, song.id.clone()));
        }
        Ok(song)
    })?;
    if let Some((line, id)) = duplicate {
        return Err(CorpusError::DuplicateId {
            path: path.to_path_buf(),
            line,
            id,
        });
    }
    Ok(songs)
}

/// Writes songs after checking the same invariants `load_corpus` enforces.
pub fn save_corpus(songs: &[Song], path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let mut seen = HashSet::new();
    for (idx, song) in songs.iter().enumerate() {
        song.validate().map_err(|m| JsonlError::record(path, idx + 1, m))?;
        if !seen.insert(song.id.as_str()) {
            return Err(CorpusError::DuplicateId {
                path: path.to_path_buf(),
                line: idx + 1,
                id: song.id.clone(),
            });
        }
    }
    Ok(write_jsonl(path, songs)?)
}

/// Reads raw records (`title`, `lyricists`, `raw_lyrics` or `lyrics`, optional `id`, `source`).
pub fn load_raw_songs(path: impl AsRef<Path>) -> Result<Vec<RawSong>, CorpusError> {
    Ok(read_jsonl(path.as_ref(), |_, line| {
        let raw: RawSong = serde_json::from_str(line).map_err(|e| e.to_string())?;
        raw.validate()?;
        Ok(raw)
    })?)
}
