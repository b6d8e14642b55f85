//! Theme-based genre tags plus the prompt, parsing and review plumbing used to
//! assign them.

mod labeling;
mod prompt;
mod review;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use labeling::{label_corpus, GenreAssignment, LabelError, LabelingOutcome, ReviewStatus};
pub use prompt::{build_genre_prompt, parse_genre_response, GenreParseError, GENRE_PROMPT_EN, GENRE_PROMPT_ZH};
pub use review::{apply_assignments, apply_review, export_review_sheet, ReviewError};

/// Prompt language for every LLM-facing template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PromptLanguage {
    Zh,
    En,
}

impl FromStr for PromptLanguage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "zh" => Ok(Self::Zh),
            "en" => Ok(Self::En),
            other => Err(format!("unknown prompt language: {other} (expected zh or en)")),
        }
    }
}

impl fmt::Display for PromptLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zh => "zh",
            Self::En => "en",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown genre: {0}")]
pub struct UnknownGenre(pub String);

/// One of the five lyric themes. Declaration order is the canonical table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenreTag {
    FolkloreTradition,
    LoveRomance,
    LifeReflection,
    SocietyReality,
    LandscapeJourney,
}

impl GenreTag {
    pub const ALL: [GenreTag; 5] = [
        GenreTag::FolkloreTradition,
        GenreTag::LoveRomance,
        GenreTag::LifeReflection,
        GenreTag::SocietyReality,
        GenreTag::LandscapeJourney,
    ];

    pub fn zh_name(self) -> &'static str {
        match self {
            GenreTag::FolkloreTradition => "民间与传统",
            GenreTag::LoveRomance => "爱与浪漫",
            GenreTag::LifeReflection => "生活与反思",
            GenreTag::SocietyReality => "社会与现实",
            GenreTag::LandscapeJourney => "风景与旅程",
        }
    }

    pub fn en_name(self) -> &'static str {
        match self {
            GenreTag::FolkloreTradition => "Folklore & Tradition",
            GenreTag::LoveRomance => "Love & Romance",
            GenreTag::LifeReflection => "Life & Reflection",
            GenreTag::SocietyReality => "Society & Reality",
            GenreTag::LandscapeJourney => "Landscape & Journey",
        }
    }

    pub fn name(self, language: PromptLanguage) -> &'static str {
        match language {
            PromptLanguage::Zh => self.zh_name(),
            PromptLanguage::En => self.en_name(),
        }
    }

    /// Position in table order, 0..5.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Accepts the English name (case-insensitive, `&` or `and`), the Chinese
    /// name, or the alternate 民俗与传统 spelling.
    pub fn parse(name: &str) -> Result<GenreTag, UnknownGenre> {
        let trimmed = name.trim();
        match trimmed {
            "民间与传统" | "民俗与传统" => return Ok(GenreTag::FolkloreTradition),
            "爱与浪漫" => return Ok(GenreTag::LoveRomance),
            "生活与反思" => return Ok(GenreTag::LifeReflection),
            "社会与现实" => return Ok(GenreTag::SocietyReality),
            "风景与旅程" => return Ok(GenreTag::LandscapeJourney),
            _ => {}
        }
        let folded: String = trimmed
            .replace("\\&", "&")
            .to_ascii_lowercase()
            .replace(" and ", " & ")
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        GenreTag::ALL
            .into_iter()
            .find(|tag| tag.en_name().to_ascii_lowercase() == folded)
            .ok_or_else(|| UnknownGenre(trimmed.to_string()))
    }
}

impl fmt::Display for GenreTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.en_name())
    }
}

impl FromStr for GenreTag {
    type Err = UnknownGenre;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenreTag::parse(s)
    }
}

impl Serialize for GenreTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.en_name())
    }
}

impl<'de> Deserialize<'de> for GenreTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        GenreTag::parse(&raw).map_err(serde::de::Error::custom)
    }
}
