//! Line-oriented JSON readers and writers shared by every data file.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum JsonlError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Record {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl JsonlError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        JsonlError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn record(path: &Path, line: usize, message: impl Into<String>) -> Self {
        JsonlError::Record {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }
}

/// Parses each nonblank line with `parse`, passing its 1-based line number.
pub fn read_jsonl<T>(
    path: &Path,
    mut parse: impl FnMut(usize, &str) -> Result<T, String>,
) -> Result<Vec<T>, JsonlError> {
    let file = File::open(path).map_err(|e| JsonlError::io(path, e))?;
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| JsonlError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let value = parse(idx + 1, &line).map_err(|message| JsonlError::record(path, idx + 1, message))?;
        out.push(value);
    }
    Ok(out)
}

/// Writes one compact JSON object per line, creating parent directories.
pub fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<(), JsonlError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| JsonlError::io(parent, e))?;
    }
    let file = File::create(path).map_err(|e| JsonlError::io(path, e))?;
    let mut out = BufWriter::new(file);
    for record in records {
        let line = serde_json::to_string(record).expect("records serialize");
        writeln!(out, "{line}").map_err(|e| JsonlError::io(path, e))?;
    }
    out.flush().map_err(|e| JsonlError::io(path, e))
}
