//! Pairwise dataset construction: song-level splits, the four pair families
//! (per-genre / cross-genre × same / different author), synthetic token
//! augmentation and the breakdown tables.

mod augment;
mod build;
mod io;
mod split;
mod stats;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Split;
use crate::genre::GenreTag;

pub use augment::{augment_songs, original_id, AugmentError, AugmentationSpec, Insertions};
pub use build::{build_pairs, FamilyKind, PairBuild, PairSetSpec, PairWarning, SpecError};
pub use io::{load_pairs, save_pairs, PairIoError};
pub use split::{assert_unseen_authors, split_songs, SplitError};
pub use stats::{pairset_stats, GenreRow, PairSetStats, StatsError, TypeRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairMode {
    #[serde(rename = "per-genre")]
    PerGenre,
    #[serde(rename = "cross-genre")]
    CrossGenre,
}

impl PairMode {
    pub const ALL: [PairMode; 2] = [PairMode::PerGenre, PairMode::CrossGenre];

    pub fn as_str(self) -> &'static str {
        match self {
            PairMode::PerGenre => "per-genre",
            PairMode::CrossGenre => "cross-genre",
        }
    }
}

impl fmt::Display for PairMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-genre" => Ok(PairMode::PerGenre),
            "cross-genre" => Ok(PairMode::CrossGenre),
            other => Err(format!("unknown mode: {other}")),
        }
    }
}

/// Two songs with a same-author label.
///
/// Per-genre pairs carry the single shared tag; cross-genre pairs carry
/// `[tag of a, tag of b]`, which differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pair {
    pub a_id: String,
    pub b_id: String,
    pub label: u8,
    pub mode: PairMode,
    pub genres: Vec<GenreTag>,
    pub split: Split,
}

impl Pair {
    /// Order-independent identity used for deduplication.
    pub fn key(&self) -> (String, String) {
        unordered_key(&self.a_id, &self.b_id)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.a_id == self.b_id {
            return Err(format!("self pair: {}", self.a_id));
        }
        if self.label > 1 {
            return Err(format!("label: {} is not 0 or 1", self.label));
        }
        if self.split == Split::Unassigned {
            return Err("split: must be train, test1 or test2".into());
        }
        match (self.mode, self.genres.as_slice()) {
            (PairMode::PerGenre, [_]) => Ok(()),
            (PairMode::CrossGenre, [a, b]) if a != b => Ok(()),
            (mode, genres) => Err(format!("genres: {} tag(s) invalid for {mode}", genres.len())),
        }
    }
}

/// Order-independent identity of an id pair.
pub fn unordered_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}
