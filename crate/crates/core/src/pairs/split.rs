use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Song, Split};
use crate::genre::GenreTag;

pub const MIN_SPLIT_SONGS: usize = 5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SplitError {
    #[error("need at least {MIN_SPLIT_SONGS} songs to split, got {0}")]
    TooFewSongs(usize),
    #[error("train fraction must be within [0, 1], got {0}")]
    BadFraction(f64),
}

/// Song-level split stratified by each song's first genre tag.
///
/// Exactly `round(n * train_fraction)` songs go to train; strata share the
/// quota by largest remainder. Both sides keep input order and have their
/// `split` field set.
pub fn split_songs(songs: &[Song], train_fraction: f64, seed: u64) -> Result<(Vec<Song>, Vec<Song>), SplitError> {
    if !(0.0..=1.0).contains(&train_fraction) {
        return Err(SplitError::BadFraction(train_fraction));
    }
    if songs.len() < MIN_SPLIT_SONGS {
        return Err(SplitError::TooFewSongs(songs.len()));
    }

    let mut strata: BTreeMap<Option<GenreTag>, Vec<usize>> = BTreeMap::new();
    for (idx, song) in songs.iter().enumerate() {
        strata.entry(song.genres.first().copied()).or_default().push(idx);
    }

    let total_train = (songs.len() as f64 * train_fraction).round() as usize;
    let mut quotas: Vec<(usize, f64)> = strata
        .values()
        .map(|members| {
            let exact = members.len() as f64 * train_fraction;
            (exact.floor() as usize, exact - exact.floor())
        })
        .collect();
    let assigned: usize = quotas.iter().map(|q| q.0).sum();
    let mut by_remainder: Vec<usize> = (0..quotas.len()).collect();
    by_remainder.sort_by(|&a, &b| quotas[b].1.total_cmp(&quotas[a].1).then(a.cmp(&b)));
    for &idx in by_remainder.iter().take(total_train.saturating_sub(assigned)) {
        quotas[idx].0 += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_train = vec![false; songs.len()];
    for (members, (quota, _)) in strata.values().zip(&quotas) {
        let mut shuffled = members.clone();
        shuffled.shuffle(&mut rng);
        for &idx in shuffled.iter().take(*quota) {
            in_train[idx] = true;
        }
    }

    let mut train = Vec::new();
    let mut test = Vec::new();
    for (song, &is_train) in songs.iter().zip(&in_train) {
        let mut song = song.clone();
        if is_train {
            song.split = Split::Train;
            train.push(song);
        } else {
            song.split = Split::Test1;
            test.push(song);
        }
    }
    Ok((train, test))
}

/// Lyricists of `test2` that also appear in `train`, sorted. Empty means disjoint.
pub fn assert_unseen_authors(test2: &[Song], train: &[Song]) -> Result<(), Vec<String>> {
    let seen: BTreeSet<&str> = train
        .iter()
        .flat_map(|s| s.lyricists.iter().map(String::as_str))
        .collect();
    let overlap: BTreeSet<String> = test2
        .iter()
        .flat_map(|s| s.lyricists.iter())
        .filter(|name| seen.contains(name.as_str()))
        .cloned()
        .collect();
    if overlap.is_empty() {
        Ok(())
    } else {
        Err(overlap.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(n: usize) -> Vec<Song> {
        (0..n)
            .map(|i| Song {
                id: format!("s{i}"),
                title: "t".into(),
                lyricists: vec![format!("author{}", i % 37)],
                lines: vec!["x".into()],
                length: 1,
                genres: vec![GenreTag::ALL[i % 5]],
                split: Split::Unassigned,
            })
            .collect()
    }

    #[test]
    fn eighty_twenty_of_a_thousand() {
        let (train, test) = split_songs(&corpus(1000), 0.8, 7).unwrap();
        assert_eq!((train.len(), test.len()), (800, 200));
        assert!(train.iter().all(|s| s.split == Split::Train));
        assert!(test.iter().all(|s| s.split == Split::Test1));
        for tag in GenreTag::ALL {
            assert_eq!(train.iter().filter(|s| s.genres[0] == tag).count(), 160);
        }
    }

    #[test]
    fn all_train_ratio() {
        let (train, test) = split_songs(&corpus(12), 1.0, 1).unwrap();
        assert_eq!((train.len(), test.len()), (12, 0));
    }

    #[test]
    fn deterministic_for_seed() {
        let songs = corpus(57);
        let a = split_songs(&songs, 0.8, 3).unwrap();
        let b = split_songs(&songs, 0.8, 3).unwrap();
        assert_eq!(a, b);
        let c = split_songs(&songs, 0.8, 4).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn too_few_songs() {
        assert_eq!(split_songs(&corpus(4), 0.8, 0).unwrap_err(), SplitError::TooFewSongs(4));
    }

    #[test]
    fn unseen_authors() {
        let mut train = corpus(5);
        let mut test2 = corpus(2);
        test2.iter_mut().for_each(|s| s.lyricists = vec!["新人".into()]);
        assert!(assert_unseen_authors(&test2, &train).is_ok());
        train[0].lyricists.push("刘畅".into());
        test2[1].lyricists.push("刘畅".into());
        assert_eq!(assert_unseen_authors(&test2, &train), Err(vec!["刘畅".to_string()]));
        assert!(assert_unseen_authors(&[], &train).is_ok());
    }
}
