#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lyricav::gateway::{ChatExchange, ChatRequest, GatewayConfig};
use lyricav::{GenreTag, Pair, PairMode, Song, Split};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn lyricav(args: &[&str], cwd: &Path) -> Run {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_lyricav"))
        .args(args)
        .current_dir(cwd)
        .env_remove("LLM_API_KEY")
        .output()
        .expect("binary runs");
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

pub fn song(id: &str, lyricists: &[&str], genres: &[GenreTag], lines: &[String]) -> Song {
    Song {
        id: id.to_string(),
        title: id.to_string(),
        lyricists: lyricists.iter().map(|s| s.to_string()).collect(),
        lines: lines.to_vec(),
        length: lines.len(),
        genres: genres.to_vec(),
        split: Split::Unassigned,
    }
}

pub fn pair(a: &str, b: &str, label: u8, mode: PairMode, genres: &[GenreTag], split: Split) -> Pair {
    Pair {
        a_id: a.to_string(),
        b_id: b.to_string(),
        label,
        mode,
        genres: genres.to_vec(),
        split,
    }
}

const VOCAB_A: [char; 10] = ['山', '水', '云', '月', '风', '花', '雪', '夜', '江', '舟'];
const VOCAB_B: [char; 10] = ['铁', '钢', '城', '车', '灯', '楼', '街', '路', '霓', '虹'];

/// Two lyricists with disjoint character sets and punctuation habits,
/// `per_author` songs each and four pairs per song index (two same-author,
/// two different-author). Ids carry `prefix` so several sets can share a
/// corpus.
pub fn separable_set(prefix: &str, per_author: usize, salt: usize) -> (Vec<Song>, Vec<Pair>) {
    let mut songs = Vec::new();
    for (author, vocab, punct) in [("甲", VOCAB_A, '，'), ("乙", VOCAB_B, '!')] {
        for k in 0..per_author {
            let lines: Vec<String> = (0..6)
                .map(|i| {
                    let len = 5 + (k + i + salt) % 5;
                    let mut line: String = (0..len).map(|j| vocab[(k * 7 + i * 3 + j * j + salt) % 10]).collect();
                    line.push(punct);
                    line
                })
                .collect();
            songs.push(song(
                &format!("{prefix}{author}{k}"),
                &[author],
                &[GenreTag::LifeReflection],
                &lines,
            ));
        }
    }
    let id = |author: &str, k: usize| format!("{prefix}{author}{}", k % per_author);
    let g = [GenreTag::LifeReflection];
    let mut pairs = Vec::new();
    for k in 0..per_author {
        pairs.push(pair(
            &id("甲", k),
            &id("甲", k + 1),
            1,
            PairMode::PerGenre,
            &g,
            Split::Train,
        ));
        pairs.push(pair(
            &id("乙", k),
            &id("乙", k + 3),
            1,
            PairMode::PerGenre,
            &g,
            Split::Train,
        ));
        pairs.push(pair(
            &id("甲", k),
            &id("乙", k),
            0,
            PairMode::PerGenre,
            &g,
            Split::Train,
        ));
        pairs.push(pair(
            &id("甲", k),
            &id("乙", k + 5),
            0,
            PairMode::PerGenre,
            &g,
            Split::Train,
        ));
    }
    (songs, pairs)
}

/// Per-genre (positives, negatives) reproducing the unseen-author
/// fine-tuning table when every pair is predicted positive.
pub const TABLE4_COUNTS: [(GenreTag, usize, usize); 5] = [
    (GenreTag::FolkloreTradition, 1, 0),
    (GenreTag::LoveRomance, 1, 7),
    (GenreTag::LifeReflection, 6, 7),
    (GenreTag::SocietyReality, 3, 3),
    (GenreTag::LandscapeJourney, 3, 3),
];

/// accuracy, f1 weighted, f1 macro, recall, precision.
pub const TABLE4_ROWS: [[f64; 5]; 5] = [
    [1.0, 1.0, 1.0, 1.0, 1.0],
    [0.1250, 0.0278, 0.1111, 1.0, 0.1250],
    [0.4615, 0.2915, 0.3158, 1.0, 0.4615],
    [0.5, 0.3333, 0.3333, 1.0, 0.5],
    [0.5, 0.3333, 0.3333, 1.0, 0.5],
];

pub const TABLE4_OVERALL: [f64; 5] = [0.4118, 0.2402, 0.2917, 1.0, 0.4118];

pub fn table4_pairs() -> Vec<Pair> {
    let mut pairs = Vec::new();
    for (genre, pos, neg) in TABLE4_COUNTS {
        for k in 0..pos + neg {
            let a = format!("{}-{k}-a", genre.index());
            let b = format!("{}-{k}-b", genre.index());
            pairs.push(pair(
                &a,
                &b,
                u8::from(k < pos),
                PairMode::PerGenre,
                &[genre],
                Split::Test2,
            ));
        }
    }
    pairs
}

/// A logged successful exchange for `prompt` under the default gateway config.
pub fn logged(prompt: &str, response: &str) -> ChatExchange {
    let config = GatewayConfig::default();
    let request = ChatRequest::user(&config.model_id, prompt, config.temperature);
    ChatExchange {
        request_hash: request.digest(),
        request,
        response: Some(response.to_string()),
        error: None,
        status: Some(200),
        latency: 0.0,
        attempt_count: 1,
        timestamp: "2024-01-01T00:00:00Z".into(),
    }
}

pub fn write_lines<T: serde::Serialize>(path: &Path, records: &[T]) {
    let text: String = records
        .iter()
        .map(|r| serde_json::to_string(r).unwrap() + "\n")
        .collect();
    std::fs::write(path, text).unwrap();
}

pub fn tmp(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

/// Parses a CSV report into (genre, mode, [accuracy, f1_weighted, f1_macro, recall, precision]).
pub fn report_rows(csv_text: &str) -> Vec<(String, String, [f64; 5])> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("column {name}"))
    };
    let idx = [
        col("accuracy"),
        col("f1_weighted"),
        col("f1_macro"),
        col("recall"),
        col("precision"),
    ];
    reader
        .records()
        .map(|record| {
            let record = record.unwrap();
            let values = idx.map(|i| record[i].parse::<f64>().unwrap());
            (record[0].to_string(), record[1].to_string(), values)
        })
        .collect()
}
