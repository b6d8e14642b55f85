//! Lyric records, cleaning, length statistics and the corpus JSONL format.

mod clean;
mod io;
mod stats;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::genre::GenreTag;

pub use clean::{clean_lyrics, compute_length, CleanOptions};
pub use io::{load_corpus, load_raw_songs, save_corpus, CorpusError};
pub use stats::{filter_outliers, length_stats, quantile, LengthStats, QuantileMethod, TukeyBounds};

/// Maximum number of genre tags on one song.
pub const MAX_GENRES: usize = 5;

/// Which dataset a song belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    #[default]
    Unassigned,
    Train,
    Test1,
    Test2,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Unassigned => "unassigned",
            Split::Train => "train",
            Split::Test1 => "test1",
            Split::Test2 => "test2",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unassigned" => Ok(Split::Unassigned),
            "train" => Ok(Split::Train),
            "test1" => Ok(Split::Test1),
            "test2" => Ok(Split::Test2),
            other => Err(format!("unknown split: {other}")),
        }
    }
}

/// A lyric record as collected, before cleaning.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSong {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub title: String,
    pub lyricists: Vec<String>,
    #[serde(alias = "lyrics")]
    pub raw_lyrics: String,
    #[serde(default)]
    pub source: String,
}

impl RawSong {
    pub fn validate(&self) -> Result<(), String> {
        if self.title.trim().is_empty() {
            return Err("title: empty".into());
        }
        validate_lyricists(&self.lyricists)
    }

    /// Cleans the lyrics into a [`Song`] with the given id.
    pub fn into_song(self, id: String, options: &CleanOptions) -> Song {
        let lines = clean_lyrics(&self.raw_lyrics, options);
        Song {
            id,
            title: self.title.trim().to_string(),
            lyricists: self.lyricists.iter().map(|n| n.trim().to_string()).collect(),
            length: compute_length(&lines),
            lines,
            genres: Vec::new(),
            split: Split::Unassigned,
        }
    }
}

/// A cleaned lyric work.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Song {
    pub id: String,
    pub title: String,
    pub lyricists: Vec<String>,
    pub lines: Vec<String>,
    pub length: usize,
    #[serde(default)]
    pub genres: Vec<GenreTag>,
    #[serde(default)]
    pub split: Split,
}

impl Song {
    /// Lines joined with `\n`; the text every model sees.
    pub fn text(&self) -> String {
        self.lines.join("\n")
    }

    pub fn shares_lyricist(&self, other: &Song) -> bool {
        self.lyricists.iter().any(|name| other.lyricists.contains(name))
    }

    /// Replaces the genre tags, dropping duplicates and keeping order.
    pub fn set_genres(&mut self, tags: &[GenreTag]) {
        self.genres.clear();
        for &tag in tags {
            if !self.genres.contains(&tag) {
                self.genres.push(tag);
            }
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.id.trim().is_empty() {
            return Err("id: empty".into());
        }
        if self.title.trim().is_empty() {
            return Err("title: empty".into());
        }
        validate_lyricists(&self.lyricists)?;
        if self.length != self.lines.len() {
            return Err(format!(
                "length: {} does not match {} lines",
                self.length,
                self.lines.len()
            ));
        }
        if self.lines.iter().any(|l| l.trim().is_empty()) {
            return Err("lines: empty line".into());
        }
        if self.genres.len() > MAX_GENRES {
            return Err(format!("genres: more than {MAX_GENRES} tags"));
        }
        for (i, tag) in self.genres.iter().enumerate() {
            if self.genres[..i].contains(tag) {
                return Err(format!("genres: duplicate tag {tag}"));
            }
        }
        Ok(())
    }
}

fn validate_lyricists(lyricists: &[String]) -> Result<(), String> {
    if lyricists.is_empty() {
        return Err("lyricists: empty list".into());
    }
    if lyricists.iter().any(|n| n.trim().is_empty()) {
        return Err("lyricists: empty name".into());
    }
    Ok(())
}
