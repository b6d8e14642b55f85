use lyricav::{GenreTag, Pair, PairMode, Song, Split};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn song(id: &str, lyricists: &[&str], genres: &[GenreTag], lines: &[&str]) -> Song {
    Song {
        id: id.to_string(),
        title: id.to_string(),
        lyricists: lyricists.iter().map(|s| s.to_string()).collect(),
        lines: lines.iter().map(|s| s.to_string()).collect(),
        length: lines.len(),
        genres: genres.to_vec(),
        split: Split::Train,
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

const VOCAB_A: &[char] = &['山', '水', '云', '月', '风', '花', '雪', '夜', '江', '舟'];
const VOCAB_B: &[char] = &['铁', '钢', '城', '车', '灯', '楼', '街', '路', '霓', '虹'];

/// Two lyricists whose songs draw on disjoint character sets, with
/// 20 same-author and 20 different-author pairs.
pub fn separable_corpus(seed: u64) -> (Vec<Song>, Vec<Pair>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut songs = Vec::new();
    for (author, vocab, punct) in [("甲", VOCAB_A, '，'), ("乙", VOCAB_B, '!')] {
        for k in 0..10 {
            let lines: Vec<String> = (0..6)
                .map(|_| {
                    let len = rng.random_range(5..10);
                    let mut line: String = (0..len).map(|_| *vocab.choose(&mut rng).unwrap()).collect();
                    line.push(punct);
                    line
                })
                .collect();
            let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
            songs.push(song(
                &format!("{author}{k}"),
                &[author],
                &[GenreTag::LifeReflection],
                &refs,
            ));
        }
    }
    let mut pairs = Vec::new();
    for k in 0..10 {
        pairs.push(pair(
            &format!("甲{k}"),
            &format!("甲{}", (k + 1) % 10),
            1,
            PairMode::PerGenre,
            &[GenreTag::LifeReflection],
            Split::Train,
        ));
        pairs.push(pair(
            &format!("乙{k}"),
            &format!("乙{}", (k + 3) % 10),
            1,
            PairMode::PerGenre,
            &[GenreTag::LifeReflection],
            Split::Train,
        ));
        pairs.push(pair(
            &format!("甲{k}"),
            &format!("乙{k}"),
            0,
            PairMode::PerGenre,
            &[GenreTag::LifeReflection],
            Split::Train,
        ));
        pairs.push(pair(
            &format!("甲{k}"),
            &format!("乙{}", (k + 5) % 10),
            0,
            PairMode::PerGenre,
            &[GenreTag::LifeReflection],
            Split::Train,
        ));
    }
    (songs, pairs)
}

/// Per-genre label counts (positives, negatives) that reproduce the
/// unseen-author fine-tuning table when every pair is predicted positive.
pub const TABLE4_PER_GENRE_COUNTS: [(GenreTag, usize, usize); 5] = [
    (GenreTag::FolkloreTradition, 1, 0),
    (GenreTag::LoveRomance, 1, 7),
    (GenreTag::LifeReflection, 6, 7),
    (GenreTag::SocietyReality, 3, 3),
    (GenreTag::LandscapeJourney, 3, 3),
];

/// Expected rows: accuracy, f1 weighted, f1 macro, recall, precision.
pub const TABLE4_PER_GENRE_ROWS: [(GenreTag, [f64; 5]); 5] = [
    (GenreTag::FolkloreTradition, [1.0, 1.0, 1.0, 1.0, 1.0]),
    (GenreTag::LoveRomance, [0.1250, 0.0278, 0.1111, 1.0, 0.1250]),
    (GenreTag::LifeReflection, [0.4615, 0.2915, 0.3158, 1.0, 0.4615]),
    (GenreTag::SocietyReality, [0.5, 0.3333, 0.3333, 1.0, 0.5]),
    (GenreTag::LandscapeJourney, [0.5, 0.3333, 0.3333, 1.0, 0.5]),
];

pub const TABLE4_OVERALL_ROW: [f64; 5] = [0.4118, 0.2402, 0.2917, 1.0, 0.4118];

/// Cross-genre rows as standalone label counts (positives, negatives).
pub const TABLE4_CROSS_ROWS: [(usize, usize, [f64; 5]); 5] = [
    (5, 3, [0.6250, 0.4808, 0.3846, 1.0, 0.6250]),
    (3, 5, [0.3750, 0.2045, 0.2727, 1.0, 0.3750]),
    (4, 7, [0.3636, 0.1939, 0.2667, 1.0, 0.3636]),
    (1, 1, [0.5, 0.3333, 0.3333, 1.0, 0.5]),
    (5, 11, [0.3125, 0.1488, 0.2381, 1.0, 0.3125]),
];

pub fn table4_per_genre_fixture() -> (Vec<Pair>, Vec<u8>) {
    let mut pairs = Vec::new();
    for (genre, pos, neg) in TABLE4_PER_GENRE_COUNTS {
        for k in 0..pos + neg {
            let label = u8::from(k < pos);
            let a = format!("{}-{k}-a", genre.index());
            let b = format!("{}-{k}-b", genre.index());
            pairs.push(pair(&a, &b, label, PairMode::PerGenre, &[genre], Split::Test2));
        }
    }
    let predictions = vec![1; pairs.len()];
    (pairs, predictions)
}

/// Random corpus of `n` songs with 1..=3 genres and a small lyricist pool,
/// some songs co-written.
pub fn random_corpus(rng: &mut impl Rng, n: usize) -> Vec<Song> {
    let pool = (n / 4).max(2);
    (0..n)
        .map(|i| {
            let mut genres: Vec<GenreTag> = Vec::new();
            for _ in 0..rng.random_range(1..=3) {
                let g = GenreTag::ALL[rng.random_range(0..5)];
                if !genres.contains(&g) {
                    genres.push(g);
                }
            }
            let mut lyricists = vec![format!("w{}", rng.random_range(0..pool))];
            if rng.random_bool(0.1) {
                let extra = format!("w{}", rng.random_range(0..pool));
                if !lyricists.contains(&extra) {
                    lyricists.push(extra);
                }
            }
            Song {
                id: format!("s{i}"),
                title: format!("t{i}"),
                lyricists,
                lines: vec![format!("line {i}")],
                length: 1,
                genres,
                split: Split::Unassigned,
            }
        })
        .collect()
}
