use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

static TIMESTAMP: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\[\d{1,3}:\d{2}(?:[.:]\d{1,3})?\]|[(（]\d{1,3}:\d{2}(?:[.:]\d{1,3})?[)）]").unwrap());
static SQUARE_SPAN: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\[[^\[\]\n]*\]|【[^【】\n]*】").unwrap());
static PAREN_SPAN: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\([^()\n]*\)|（[^（）\n]*）").unwrap());

const SQUARE_CHARS: [char; 4] = ['[', ']', '【', '】'];
const PAREN_CHARS: [char; 4] = ['(', ')', '（', '）'];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CleanOptions {
    /// Drop parenthesised spans wholesale. When false only the parenthesis
    /// characters are removed and their contents kept.
    pub strip_parentheses: bool,
    /// Longest run of characters before a colon treated as a speaker label.
    pub speaker_label_max_chars: usize,
}

impl Default for CleanOptions {
    fn default() -> Self {
        Self {
            strip_parentheses: true,
            speaker_label_max_chars: 6,
        }
    }
}

/// Normalizes raw lyrics into nonempty lines: timestamps, bracketed
/// annotations and speaker labels (with anything before them) are removed.
pub fn clean_lyrics(raw: &str, options: &CleanOptions) -> Vec<String> {
    let text = TIMESTAMP.replace_all(raw, "");
    let text = remove_spans(&text, &SQUARE_SPAN);
    let text = if options.strip_parentheses {
        remove_spans(&text, &PAREN_SPAN)
    } else {
        text
    };
    let text: String = text
        .chars()
        .filter(|c| !SQUARE_CHARS.contains(c) && !PAREN_CHARS.contains(c))
        .collect();

    text.lines()
        .map(|line| strip_speaker_label(line, options.speaker_label_max_chars).trim())
        .filter(|line| !line.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn compute_length(lines: &[String]) -> usize {
    lines.len()
}

// Repeats until stable so nested spans disappear from the inside out.
fn remove_spans(text: &str, pattern: &Regex) -> String {
    let mut current = text.to_string();
    loop {
        let next = pattern.replace_all(&current, "").into_owned();
        if next == current {
            return current;
        }
        current = next;
    }
}

fn strip_speaker_label(line: &str, max_chars: usize) -> &str {
    for (pos, c) in line.char_indices() {
        if c != ':' && c != '：' {
            continue;
        }
        let label_len = line[..pos].chars().rev().take_while(|c| c.is_alphanumeric()).count();
        if (1..=max_chars).contains(&label_len) {
            return &line[pos + c.len_utf8()..];
        }
    }
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clean(raw: &str) -> Vec<String> {
        clean_lyrics(raw, &CleanOptions::default())
    }

    #[test]
    fn strips_timestamps() {
        assert_eq!(clean("[00:12.30]你好世界"), vec!["你好世界"]);
        assert_eq!(clean("[01:02]一\n(03:04)二"), vec!["一", "二"]);
    }

    #[test]
    fn strips_speaker_label_and_prefix() {
        assert_eq!(clean("前奏 男：月光下"), vec!["月光下"]);
        assert_eq!(clean("Singer A: hello"), vec!["hello"]);
    }

    #[test]
    fn long_prefix_is_not_a_label() {
        assert_eq!(clean("这是一句很长的歌词：继续"), vec!["这是一句很长的歌词：继续"]);
        let opts = CleanOptions {
            speaker_label_max_chars: 10,
            ..CleanOptions::default()
        };
        assert_eq!(clean_lyrics("这是一句很长的歌词：继续", &opts), vec!["继续"]);
    }

    #[test]
    fn empty_input() {
        assert!(clean("").is_empty());
        assert!(clean("\n  \n[00:01]\n").is_empty());
    }

    #[test]
    fn removes_annotation_spans() {
        assert_eq!(
            clean("【副歌】\n我爱你（重复）\n[Chorus] la (x2)\n作词：刘畅"),
            vec!["我爱你", "la", "刘畅"]
        );
    }

    #[test]
    fn keeps_parenthesis_contents_when_disabled() {
        let opts = CleanOptions {
            strip_parentheses: false,
            ..CleanOptions::default()
        };
        assert_eq!(clean_lyrics("我爱你（真的）", &opts), vec!["我爱你真的"]);
    }

    #[test]
    fn stray_brackets_removed() {
        assert_eq!(clean("半个[括号\n另)一个"), vec!["半个括号", "另一个"]);
    }
}
