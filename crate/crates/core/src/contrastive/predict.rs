use std::collections::HashMap;

use super::{cosine_similarity, encode, featurize, ContrastiveError, EncoderParams};
use crate::corpus::Song;
use crate::evaluation::predict_at;
use crate::pairs::Pair;

fn find<'a>(songs: &'a [Song], id: &str) -> Result<&'a Song, ContrastiveError> {
    songs
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| ContrastiveError::UnknownSong(id.to_string()))
}

/// 1 iff the cosine similarity of the two embeddings is at least `threshold`.
pub fn predict(params: &EncoderParams, threshold: f64, pair: &Pair, songs: &[Song]) -> Result<u8, ContrastiveError> {
    let a = encode(params, &featurize(find(songs, &pair.a_id)?, params))?;
    let b = encode(params, &featurize(find(songs, &pair.b_id)?, params))?;
    Ok(predict_at(cosine_similarity(&a, &b)?, threshold))
}

/// Similarities for many pairs, encoding each song once.
pub fn pair_similarities(params: &EncoderParams, pairs: &[Pair], songs: &[Song]) -> Result<Vec<f64>, ContrastiveError> {
    let by_id: HashMap<&str, &Song> = songs.iter().map(|s| (s.id.as_str(), s)).collect();
    let mut cache: HashMap<&str, Vec<f64>> = HashMap::new();
    let mut out = Vec::with_capacity(pairs.len());
    for pair in pairs {
        for id in [pair.a_id.as_str(), pair.b_id.as_str()] {
            if !cache.contains_key(id) {
                let song = by_id
                    .get(id)
                    .ok_or_else(|| ContrastiveError::UnknownSong(id.to_string()))?;
                cache.insert(id, encode(params, &featurize(song, params))?);
            }
        }
        out.push(cosine_similarity(
            &cache[pair.a_id.as_str()],
            &cache[pair.b_id.as_str()],
        )?);
    }
    Ok(out)
}
