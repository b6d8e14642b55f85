use lyricav::corpus::{clean_lyrics, compute_length, CleanOptions};
use lyricav::genre::{build_genre_prompt, parse_genre_response, GENRE_PROMPT_EN, GENRE_PROMPT_ZH};
use lyricav::zeroshot::{build_attrib_prompt, parse_verdict, ATTRIB_PROMPT_EN, ATTRIB_PROMPT_ZH};
use lyricav::{GenreTag, PromptLanguage};

const GOLDEN_GENRE_ZH: &str = include_str!("golden/genre_prompt_zh.txt");
const GOLDEN_GENRE_EN: &str = include_str!("golden/genre_prompt_en.txt");
const GOLDEN_ATTRIB_ZH: &str = include_str!("golden/attrib_prompt_zh.txt");
const GOLDEN_ATTRIB_EN: &str = include_str!("golden/attrib_prompt_en.txt");

#[test]
fn templates_match_golden_files() {
    assert_eq!(GENRE_PROMPT_ZH, GOLDEN_GENRE_ZH);
    assert_eq!(GENRE_PROMPT_EN, GOLDEN_GENRE_EN);
    assert_eq!(ATTRIB_PROMPT_ZH, GOLDEN_ATTRIB_ZH);
    assert_eq!(ATTRIB_PROMPT_EN, GOLDEN_ATTRIB_EN);
}

#[test]
fn genre_prompt_substitutes_lyrics_once() {
    let lyrics = "月光下\n小河边";
    let zh = build_genre_prompt(lyrics, PromptLanguage::Zh).unwrap();
    assert_eq!(zh, GOLDEN_GENRE_ZH.replace("{lyrics}", lyrics));
    assert!(zh.contains("\n流派： [流派1]\n"));
    let en = build_genre_prompt(lyrics, PromptLanguage::En).unwrap();
    assert_eq!(en, GOLDEN_GENRE_EN.replace("{lyrics}", lyrics));
}

#[test]
fn attribution_prompt_is_template_plus_blocks() {
    let zh = build_attrib_prompt("第一首\n第二行", "另一首", PromptLanguage::Zh).unwrap();
    assert!(zh.starts_with(GOLDEN_ATTRIB_ZH));
    assert!(zh.ends_with("【文本一】\n第一首\n第二行\n\n【文本二】\n另一首"));
    let en = build_attrib_prompt("A", "B", PromptLanguage::En).unwrap();
    assert!(en.starts_with(GOLDEN_ATTRIB_EN));
}

#[test]
fn sample_responses_parse() {
    let one = include_str!("fixtures/genre_response_example1_zh.txt");
    let two = include_str!("fixtures/genre_response_example2_zh.txt");
    assert_eq!(parse_genre_response(one).unwrap(), vec![GenreTag::LifeReflection]);
    assert_eq!(
        parse_genre_response(two).unwrap(),
        vec![GenreTag::LoveRomance, GenreTag::LifeReflection]
    );
    assert_eq!(
        parse_genre_response("<think>maybe love</think>\n\nGenres: [Society & Reality]").unwrap(),
        vec![GenreTag::SocietyReality]
    );
}

#[test]
fn sample_lyrics_length() {
    let raw = include_str!("fixtures/lyrics_example2.txt");
    let lines = clean_lyrics(raw, &CleanOptions::default());
    assert_eq!(compute_length(&lines), 43);
}

#[test]
fn verdicts() {
    assert_eq!(parse_verdict("<think>0 or 1, hmm, 0</think>\n1").unwrap(), 1);
    assert_eq!(parse_verdict("输出：0").unwrap(), 0);
    assert_eq!(parse_verdict("可能是1，但最终答案：0").unwrap(), 0);
    assert_eq!(parse_verdict("<think>\n都是0吗？\n</think>\n\n1").unwrap(), 1);
    assert!(parse_verdict("maybe").is_err());
}
