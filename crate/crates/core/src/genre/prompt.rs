use super::{GenreTag, PromptLanguage, UnknownGenre};
use crate::text::strip_think_blocks;

pub(crate) const LYRICS_PLACEHOLDER: &str = "{lyrics}";

pub const GENRE_PROMPT_ZH: &str = "给定以下的流派概念：
1. 爱与浪漫：浪漫、心碎、渴望、想念某人
2. 生活与反思：成长、遗憾、个人教训、沉思
3. 社会与现实：城市斗争、不平等、阶级、政治色彩
4. 风景与旅程：大自然、旅行、风景、漫游、孤独
5. 民俗与传统：传说、文化图标、地区故事、历史主题

请对以下歌词进行分类：
{lyrics}

如果模型认为多个流派几乎同样有可能是这首歌词的流派，可以生成多个流派。
但大多数情况下，应该只提供一个流派。输出应该遵循以下格式：

流派： [流派1]

其中，流派1是流派标签（例如，爱与浪漫，生活与反思）。
如果多个流派几乎同样有可能，则应将它们列在方括号内，并用逗号分隔，例如：
流派： [爱与浪漫, 生活与反思]。
但请注意，大多数情况下应该只有一个流派列在方括号内。";

pub const GENRE_PROMPT_EN: &str = "Given the following genre concepts:
1. Love & Romance: Romance, heartbreak, longing, missing someone
2. Life & Reflection: Growth, regret, personal lessons, contemplation
3. Society & Reality: Urban struggles, inequality, class, political tone
4. Landscape & Journey: Nature, travel, scenery, wandering, solitude
5. Folklore & Tradition: Legends, cultural icons, regional storytelling, historical motifs
Please classify the genre of the following lyrics:
{lyrics}
If the model thinks multiple genres are equally likely to be the genre of these lyrics, it can generate multiple genres. However, in most cases, only one genre should be provided. The output should follow the format:
Genres: [Genre1]
Where Genre1 is the genre label (e.g., Love & Romance, Life & Reflection). If multiple genres are equally likely, they should be listed inside the square brackets and separated by commas, e.g., Genres: [Love & Romance, Life & Reflection]. But again, most of the time, there should only be one genre listed inside the brackets.";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenreParseError {
    #[error("empty lyrics")]
    EmptyLyrics,
    #[error("missing genre line")]
    MissingGenreLine,
    #[error("empty genre list")]
    EmptyGenreList,
    #[error(transparent)]
    Unknown(#[from] UnknownGenre),
}

/// Fills the genre-classification template for `language` with `lyrics`.
pub fn build_genre_prompt(lyrics: &str, language: PromptLanguage) -> Result<String, GenreParseError> {
    if lyrics.trim().is_empty() {
        return Err(GenreParseError::EmptyLyrics);
    }
    let template = match language {
        PromptLanguage::Zh => GENRE_PROMPT_ZH,
        PromptLanguage::En => GENRE_PROMPT_EN,
    };
    Ok(template.replacen(LYRICS_PLACEHOLDER, lyrics, 1))
}

const GENRE_LINE_PREFIXES: [&str; 3] = ["流派：", "流派:", "Genres:"];

/// Extracts the genre list from a raw model response.
///
/// The last line starting with a genre prefix wins. Tags are returned in the
/// listed order with duplicates removed.
pub fn parse_genre_response(raw: &str) -> Result<Vec<GenreTag>, GenreParseError> {
    let answer = strip_think_blocks(raw);
    let payload = answer
        .lines()
        .rev()
        .find_map(|line| {
            let line = line.trim();
            GENRE_LINE_PREFIXES.iter().find_map(|prefix| line.strip_prefix(prefix))
        })
        .ok_or(GenreParseError::MissingGenreLine)?;

    let list = match (payload.find('['), payload.rfind(']')) {
        (Some(open), Some(close)) if open < close => &payload[open + 1..close],
        // unbracketed answers like "流派：生活与反思" are taken as-is
        _ => payload.trim().trim_end_matches(['。', '.']),
    };

    let mut tags = Vec::new();
    for name in list.split([',', '，']) {
        let name = name.trim();
        if name.is_empty() {
            continue;
        }
        let tag = GenreTag::parse(name)?;
        if !tags.contains(&tag) {
            tags.push(tag);
        }
    }
    if tags.is_empty() {
        return Err(GenreParseError::EmptyGenreList);
    }
    Ok(tags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zh_prompt_contains_format_line() {
        let prompt = build_genre_prompt("月光下", PromptLanguage::Zh).unwrap();
        assert!(prompt.lines().any(|l| l == "流派： [流派1]"));
    }

    #[test]
    fn en_prompt_contains_format_line() {
        let prompt = build_genre_prompt("月光下", PromptLanguage::En).unwrap();
        assert!(prompt.contains("Genres: [Genre1]"));
    }

    #[test]
    fn single_substitution() {
        let prompt = build_genre_prompt("A", PromptLanguage::Zh).unwrap();
        assert_eq!(prompt.matches('A').count(), 1);
        assert_eq!(prompt.replacen('A', LYRICS_PLACEHOLDER, 1), GENRE_PROMPT_ZH);
    }

    #[test]
    fn empty_lyrics_rejected() {
        assert_eq!(
            build_genre_prompt("  ", PromptLanguage::En),
            Err(GenreParseError::EmptyLyrics)
        );
    }

    #[test]
    fn parses_multi_genre_answer() {
        let raw = "<think>\n所以，主要的流派应该是爱与浪漫\n</think>\n\n流派：[爱与浪漫, 生活与反思]";
        assert_eq!(
            parse_genre_response(raw).unwrap(),
            vec![GenreTag::LoveRomance, GenreTag::LifeReflection]
        );
    }

    #[test]
    fn last_genre_line_wins() {
        let raw = "Genres: [Love & Romance]\nthinking again\nGenres: [Society & Reality]";
        assert_eq!(parse_genre_response(raw).unwrap(), vec![GenreTag::SocietyReality]);
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            parse_genre_response("no answer"),
            Err(GenreParseError::MissingGenreLine)
        );
        assert_eq!(parse_genre_response("流派：[]"), Err(GenreParseError::EmptyGenreList));
        assert_eq!(
            parse_genre_response("流派：[摇滚]").unwrap_err().to_string(),
            "unknown genre: 摇滚"
        );
    }

    #[test]
    fn fullwidth_comma_and_ascii_colon() {
        assert_eq!(
            parse_genre_response("流派: [社会与现实，风景与旅程]").unwrap(),
            vec![GenreTag::SocietyReality, GenreTag::LandscapeJourney]
        );
    }
}
