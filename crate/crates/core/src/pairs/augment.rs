use std::sync::LazyLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::corpus::Song;

static SYN_TOKEN: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\[SYN\d+\]$").unwrap());

const AUG_MARKER: &str = "#aug";

/// How many synthetic tokens each augmented copy receives.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Insertions {
    PerSong(usize),
    /// Rounded `rate * line count`.
    PerLine(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AugmentationSpec {
    pub token_vocabulary: Vec<String>,
    pub insertions: Insertions,
    pub copies_per_song: usize,
    pub seed: u64,
}

impl Default for AugmentationSpec {
    fn default() -> Self {
        Self {
            token_vocabulary: (0..10).map(|k| format!("[SYN{k}]")).collect(),
            insertions: Insertions::PerSong(1),
            copies_per_song: 1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AugmentError {
    #[error("token {0:?} does not match [SYN<digits>]")]
    BadToken(String),
    #[error("token vocabulary is empty")]
    EmptyVocabulary,
    #[error("insertion rate must be finite and >= 0, got {0}")]
    BadRate(f64),
}

impl AugmentationSpec {
    pub fn validate(&self) -> Result<(), AugmentError> {
        if self.token_vocabulary.is_empty() {
            return Err(AugmentError::EmptyVocabulary);
        }
        if let Some(bad) = self.token_vocabulary.iter().find(|t| !SYN_TOKEN.is_match(t)) {
            return Err(AugmentError::BadToken(bad.clone()));
        }
        if let Insertions::PerLine(rate) = self.insertions {
            if !(rate.is_finite() && rate >= 0.0) {
                return Err(AugmentError::BadRate(rate));
            }
        }
        Ok(())
    }

    fn insertions_for(&self, song: &Song) -> usize {
        match self.insertions {
            Insertions::PerSong(n) => n,
            Insertions::PerLine(rate) => (rate * song.lines.len() as f64).round() as usize,
        }
    }
}

/// Id of the song an augmented copy was derived from (itself otherwise).
pub fn original_id(id: &str) -> &str {
    match id.find(AUG_MARKER) {
        Some(pos) => &id[..pos],
        None => id,
    }
}

/// Returns the input songs followed by augmented copies `<id>#aug<k>`.
///
/// Tokens go in at character boundaries of the original lines, so removing
/// them restores the original text. Songs that would receive no tokens get no
/// copies.
pub fn augment_songs(songs: &[Song], spec: &AugmentationSpec) -> Result<Vec<Song>, AugmentError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = songs.to_vec();
    for song in songs {
        let count = spec.insertions_for(song);
        if count == 0 || song.lines.is_empty() {
            continue;
        }
        for copy in 0..spec.copies_per_song {
            let mut augmented = song.clone();
            augmented.id = format!("{}{AUG_MARKER}{copy}", song.id);
            augmented.lines = inject(&song.lines, count, &spec.token_vocabulary, &mut rng);
            out.push(augmented);
        }
    }
    Ok(out)
}

fn inject(lines: &[String], count: usize, vocabulary: &[String], rng: &mut impl Rng) -> Vec<String> {
    // (line, char position, token) in original coordinates
    let mut picks: Vec<(usize, usize, &str)> = (0..count)
        .map(|_| {
            let line = rng.random_range(0..lines.len());
            let pos = rng.random_range(0..=lines[line].chars().count());
            let token = vocabulary[rng.random_range(0..vocabulary.len())].as_str();
            (line, pos, token)
        })
        .collect();
    picks.sort_by_key(|&(line, pos, _)| (line, pos));

    lines
        .iter()
        .enumerate()
        .map(|(idx, line)| {
            let mut here = picks.iter().filter(|p| p.0 == idx).peekable();
            let mut rebuilt = String::with_capacity(line.len() + 8);
            for (pos, c) in line.chars().enumerate() {
                while let Some(&(_, _, token)) = here.next_if(|p| p.1 == pos) {
                    rebuilt.push_str(token);
                }
                rebuilt.push(c);
            }
            for &(_, _, token) in here {
                rebuilt.push_str(token);
            }
            rebuilt
        })
        .collect()
}
