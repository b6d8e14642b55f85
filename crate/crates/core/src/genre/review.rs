use std::collections::HashMap;
use std::path::{Path, PathBuf};

use super::{GenreAssignment, GenreTag, ReviewStatus};
use crate::corpus::Song;

#[derive(Debug, thiserror::Error)]
pub enum ReviewError {
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("row {row}: invalid verdict {verdict:?} (expected confirm or correct:<tag|tag>)")]
    InvalidVerdict { row: usize, verdict: String },
    #[error("row {row}: unknown song id {id}")]
    UnknownSong { row: usize, id: String },
}

const HEADER: [&str; 4] = ["song_id", "title", "assigned_tags", "verdict"];

/// Writes one review row per song with an empty verdict column.
pub fn export_review_sheet(assignments: &[GenreAssignment], path: impl AsRef<Path>) -> Result<(), ReviewError> {
    let path = path.as_ref();
    let csv_err = |source| ReviewError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut writer = csv::Writer::from_path(path).map_err(csv_err)?;
    writer.write_record(HEADER).map_err(csv_err)?;
    let mut seen = std::collections::HashSet::new();
    for assignment in assignments {
        if !seen.insert(assignment.song_id.as_str()) {
            continue;
        }
        let tags = join_tags(&assignment.tags);
        writer
            .write_record([
                assignment.song_id.as_str(),
                assignment.title.as_str(),
                tags.as_str(),
                "",
            ])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(|e| csv_err(e.into()))
}

fn join_tags(tags: &[GenreTag]) -> String {
    tags.iter().map(|t| t.en_name()).collect::<Vec<_>>().join("|")
}

enum Verdict {
    Confirm,
    Correct(Vec<GenreTag>),
}

fn parse_verdict(raw: &str) -> Option<Verdict> {
    let raw = raw.trim();
    if raw.eq_ignore_ascii_case("confirm") {
        return Some(Verdict::Confirm);
    }
    let list = raw.strip_prefix("correct:")?;
    let mut tags = Vec::new();
    for name in list.split('|') {
        let tag = GenreTag::parse(name).ok()?;
        if !tags.contains(&tag) {
            tags.push(tag);
        }
    }
    (!tags.is_empty() && tags.len() <= crate::corpus::MAX_GENRES).then_some(Verdict::Correct(tags))
}

/// Applies reviewer verdicts to every assignment of the named songs.
pub fn apply_review(
    mut assignments: Vec<GenreAssignment>,
    path: impl AsRef<Path>,
) -> Result<Vec<GenreAssignment>, ReviewError> {
    let path = path.as_ref();
    let csv_err = |source| ReviewError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut by_id: HashMap<String, Vec<usize>> = HashMap::new();
    for (idx, a) in assignments.iter().enumerate() {
        by_id.entry(a.song_id.clone()).or_default().push(idx);
    }

    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 2;
        let record = record.map_err(csv_err)?;
        let id = record.get(0).unwrap_or_default().trim();
        let verdict_raw = record.get(3).unwrap_or_default();
        let targets = by_id.get(id).ok_or_else(|| ReviewError::UnknownSong {
            row,
            id: id.to_string(),
        })?;
        let verdict = parse_verdict(verdict_raw).ok_or_else(|| ReviewError::InvalidVerdict {
            row,
            verdict: verdict_raw.to_string(),
        })?;
        for &target in targets {
            let assignment = &mut assignments[target];
            match &verdict {
                Verdict::Confirm => {
                    assignment.verified = ReviewStatus::Confirmed;
                    assignment.corrected_tags = None;
                }
                Verdict::Correct(tags) => {
                    assignment.verified = ReviewStatus::Corrected;
                    assignment.corrected_tags = Some(tags.clone());
                }
            }
        }
    }
    Ok(assignments)
}

/// Writes each assignment's effective tags onto its song. Later assignments
/// for the same song win. Returns the ids that matched no song.
pub fn apply_assignments(songs: &mut [Song], assignments: &[GenreAssignment]) -> Vec<String> {
    let index: HashMap<&str, usize> = songs.iter().enumerate().map(|(i, s)| (s.id.as_str(), i)).collect();
    let mut missing = Vec::new();
    let mut updates = Vec::new();
    for a in assignments {
        match index.get(a.song_id.as_str()) {
            Some(&i) => updates.push((i, a.effective_tags().to_vec())),
            None => missing.push(a.song_id.clone()),
        }
    }
    for (i, tags) in updates {
        songs[i].set_genres(&tags);
    }
    missing
}
