//! Zero-shot same-author verification through a chat model.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::Song;
use crate::gateway::{ChatBackend, GatewayError};
use crate::genre::PromptLanguage;
use crate::jsonl::{read_jsonl, write_jsonl, JsonlError};
use crate::pairs::Pair;
use crate::text::{sha256_hex, strip_think_blocks};

pub const ATTRIB_PROMPT_ZH: &str = "验证两段输入文本是否由同一位作者撰写。分析输入文本的写作风格，忽略主题和内容的差异。推理应基于语言特征，例如动词、标点符号、稀有词汇、词缀、幽默、讽刺、打字错误和拼写错误等。输出应遵循以下格式：0 或 1（0表示不同作者，1表示相同作者）。";

pub const ATTRIB_PROMPT_EN: &str = "Determine whether the two input texts were written by the same author.
Analyze the writing style of the texts while ignoring differences in topic and content.
The reasoning should be based on linguistic features such as verb usage, punctuation,
rare vocabulary, affixes, humor, sarcasm, typos, and spelling variations.
The output should follow this format: 0 or 1 (0 indicates different authors, 1 indicates the same author).";

#[derive(Debug, thiserror::Error)]
pub enum ZeroShotError {
    #[error("empty lyric text")]
    EmptyText,
    #[error("unparseable verdict")]
    UnparseableVerdict,
    #[error("pair references unknown song {0}")]
    UnknownSong(String),
    #[error(transparent)]
    Gateway(#[from] GatewayError),
}

/// Fills the verification template and appends both texts, lines preserved.
pub fn build_attrib_prompt(lyrics_a: &str, lyrics_b: &str, language: PromptLanguage) -> Result<String, ZeroShotError> {
    if lyrics_a.trim().is_empty() || lyrics_b.trim().is_empty() {
        return Err(ZeroShotError::EmptyText);
    }
    let (template, first, second) = match language {
        PromptLanguage::Zh => (ATTRIB_PROMPT_ZH, "【文本一】", "【文本二】"),
        PromptLanguage::En => (ATTRIB_PROMPT_EN, "[Text 1]", "[Text 2]"),
    };
    Ok(format!("{template}\n\n{first}\n{lyrics_a}\n\n{second}\n{lyrics_b}"))
}

/// Returns the last standalone `0` or `1` after dropping reasoning blocks.
pub fn parse_verdict(raw: &str) -> Result<u8, ZeroShotError> {
    let text = strip_think_blocks(raw);
    let chars: Vec<char> = text.chars().collect();
    let blocks_left = |c: char| c.is_ascii_alphanumeric() || c == '.';
    for i in (0..chars.len()).rev() {
        let c = chars[i];
        if c != '0' && c != '1' {
            continue;
        }
        if i > 0 && blocks_left(chars[i - 1]) {
            continue;
        }
        let decimal = chars.get(i + 1) == Some(&'.') && chars.get(i + 2).is_some_and(|d| d.is_ascii_digit());
        if decimal || chars.get(i + 1).is_some_and(|n| n.is_ascii_alphanumeric()) {
            continue;
        }
        return Ok(if c == '1' { 1 } else { 0 });
    }
    Err(ZeroShotError::UnparseableVerdict)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub a_id: String,
    pub b_id: String,
    pub predicted: u8,
    pub raw_response: String,
}

/// The stored form of a verdict; the full response stays in the exchange log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub a_id: String,
    pub b_id: String,
    pub predicted: u8,
    pub raw_response_digest: String,
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        Self {
            a_id: v.a_id.clone(),
            b_id: v.b_id.clone(),
            predicted: v.predicted,
            raw_response_digest: sha256_hex(&v.raw_response),
        }
    }
}

/// Queries the backend once per pair. Results are aligned with `pairs`;
/// failures stay per item.
pub fn run_zeroshot(
    pairs: &[Pair],
    songs: &[Song],
    backend: &dyn ChatBackend,
    language: PromptLanguage,
) -> Vec<Result<Verdict, ZeroShotError>> {
    let by_id: HashMap<&str, &Song> = songs.iter().map(|s| (s.id.as_str(), s)).collect();
    let prompts: Vec<Result<String, ZeroShotError>> = pairs
        .iter()
        .map(|pair| {
            let a = by_id
                .get(pair.a_id.as_str())
                .ok_or_else(|| ZeroShotError::UnknownSong(pair.a_id.clone()))?;
            let b = by_id
                .get(pair.b_id.as_str())
                .ok_or_else(|| ZeroShotError::UnknownSong(pair.b_id.clone()))?;
            build_attrib_prompt(&a.text(), &b.text(), language)
        })
        .collect();

    let ready: Vec<String> = prompts.iter().filter_map(|p| p.as_ref().ok().cloned()).collect();
    let mut responses = backend.complete_batch(&ready).into_iter();

    pairs
        .iter()
        .zip(prompts)
        .map(|(pair, prompt)| {
            prompt?;
            let raw = responses.next().expect("one response per prompt")?;
            let predicted = parse_verdict(&raw)?;
            Ok(Verdict {
                a_id: pair.a_id.clone(),
                b_id: pair.b_id.clone(),
                predicted,
                raw_response: raw,
            })
        })
        .collect()
}

pub fn save_verdicts(verdicts: &[VerdictRecord], path: impl AsRef<Path>) -> Result<(), JsonlError> {
    write_jsonl(path.as_ref(), verdicts)
}

pub fn load_verdicts(path: impl AsRef<Path>) -> Result<Vec<VerdictRecord>, JsonlError> {
    read_jsonl(path.as_ref(), |_, line| {
        let record: VerdictRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
        if record.predicted > 1 {
            return Err(format!("predicted: {} is not 0 or 1", record.predicted));
        }
        Ok(record)
    })
}
