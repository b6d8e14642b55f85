use serde::{Deserialize, Serialize};

use super::{build_genre_prompt, parse_genre_response, GenreTag, PromptLanguage};
use crate::corpus::Song;
use crate::gateway::ChatBackend;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReviewStatus {
    #[default]
    Unreviewed,
    Confirmed,
    Corrected,
}

/// Model-assigned genres for one song, plus the human review outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenreAssignment {
    pub song_id: String,
    pub title: String,
    pub tags: Vec<GenreTag>,
    pub raw_response: String,
    pub prompt_language: PromptLanguage,
    #[serde(default)]
    pub verified: ReviewStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected_tags: Option<Vec<GenreTag>>,
}

impl GenreAssignment {
    /// Reviewer corrections when present, otherwise the model's tags.
    pub fn effective_tags(&self) -> &[GenreTag] {
        match (&self.verified, &self.corrected_tags) {
            (ReviewStatus::Corrected, Some(tags)) => tags,
            _ => &self.tags,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelError {
    pub song_id: String,
    pub language: PromptLanguage,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelingOutcome {
    pub assignments: Vec<GenreAssignment>,
    pub errors: Vec<LabelError>,
}

/// Runs the genre prompt over the first `sample_limit` songs (all when
/// `None`) in each requested language.
///
/// Output order is song order, then language order. Songs receive the tags
/// from the first language that produced a parse; failures are collected
/// rather than aborting the batch.
pub fn label_corpus(
    songs: &mut [Song],
    backend: &dyn ChatBackend,
    languages: &[PromptLanguage],
    sample_limit: Option<usize>,
) -> LabelingOutcome {
    let count = sample_limit.unwrap_or(songs.len()).min(songs.len());
    let sample = &mut songs[..count];

    let mut jobs = Vec::new();
    let mut outcome = LabelingOutcome::default();
    for (idx, song) in sample.iter().enumerate() {
        for &language in languages {
            match build_genre_prompt(&song.text(), language) {
                Ok(prompt) => jobs.push((idx, language, prompt)),
                Err(e) => outcome.errors.push(LabelError {
                    song_id: song.id.clone(),
                    language,
                    message: e.to_string(),
                }),
            }
        }
    }

    let prompts: Vec<String> = jobs.iter().map(|(_, _, p)| p.clone()).collect();
    let responses = backend.complete_batch(&prompts);

    let mut labeled = vec![false; sample.len()];
    for ((idx, language, _), response) in jobs.into_iter().zip(responses) {
        let song = &mut sample[idx];
        let parsed = response.map_err(|e| e.to_string()).and_then(|raw| {
            parse_genre_response(&raw)
                .map(|tags| (raw, tags))
                .map_err(|e| e.to_string())
        });
        match parsed {
            Ok((raw_response, tags)) => {
                if !labeled[idx] {
                    song.set_genres(&tags);
                    labeled[idx] = true;
                }
                outcome.assignments.push(GenreAssignment {
                    song_id: song.id.clone(),
                    title: song.title.clone(),
                    tags,
                    raw_response,
                    prompt_language: language,
                    verified: ReviewStatus::Unreviewed,
                    corrected_tags: None,
                });
            }
            Err(message) => outcome.errors.push(LabelError {
                song_id: song.id.clone(),
                language,
                message,
            }),
        }
    }
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Split;
    use crate::gateway::GatewayError;

    struct Scripted<F: Fn(&str) -> Result<String, GatewayError> + Sync>(F);

    impl<F: Fn(&str) -> Result<String, GatewayError> + Sync> ChatBackend for Scripted<F> {
        fn complete_batch(&self, prompts: &[String]) -> Vec<Result<String, GatewayError>> {
            prompts.iter().map(|p| (self.0)(p)).collect()
        }
    }

    fn songs(n: usize) -> Vec<Song> {
        (0..n)
            .map(|i| Song {
                id: format!("s{i}"),
                title: format!("t{i}"),
                lyricists: vec!["a".into()],
                lines: vec!["月光下".into()],
                length: 1,
                genres: vec![],
                split: Split::Unassigned,
            })
            .collect()
    }

    #[test]
    fn both_languages_on_a_sample() {
        let backend = Scripted(|prompt: &str| {
            Ok(if prompt.starts_with("Given") {
                "Genres: [Love & Romance]".to_string()
            } else {
                "<think>嗯</think>\n流派：[生活与反思]".to_string()
            })
        });
        let mut corpus = songs(30);
        let out = label_corpus(
            &mut corpus,
            &backend,
            &[PromptLanguage::Zh, PromptLanguage::En],
            Some(10),
        );
        assert_eq!(out.assignments.len(), 20);
        assert!(out.errors.is_empty());
        assert_eq!(out.assignments[0].prompt_language, PromptLanguage::Zh);
        assert_eq!(out.assignments[1].prompt_language, PromptLanguage::En);
        assert_eq!(corpus[0].genres, vec![GenreTag::LifeReflection]);
        assert!(corpus[10].genres.is_empty());
    }

    #[test]
    fn empty_corpus() {
        let backend = Scripted(|_: &str| Ok(String::new()));
        let out = label_corpus(&mut [], &backend, &[PromptLanguage::Zh], None);
        assert_eq!(out, LabelingOutcome::default());
    }

    #[test]
    fn failing_gateway_records_errors() {
        let backend = Scripted(|_: &str| {
            Err(GatewayError::Unavailable {
                status: Some(503),
                attempts: 3,
                detail: "HTTP 503".into(),
            })
        });
        let mut corpus = songs(4);
        let out = label_corpus(&mut corpus, &backend, &[PromptLanguage::Zh], None);
        assert!(out.assignments.is_empty());
        assert_eq!(out.errors.len(), 4);
        assert!(out.errors[0].message.contains("gateway unavailable"));
    }

    #[test]
    fn unparseable_response_is_a_per_song_error() {
        let backend = Scripted(|p: &str| {
            Ok(if p.contains("坏") {
                "no idea".into()
            } else {
                "流派：[爱与浪漫]".into()
            })
        });
        let mut corpus = songs(3);
        corpus[1].lines = vec!["坏".into()];
        let out = label_corpus(&mut corpus, &backend, &[PromptLanguage::Zh], None);
        assert_eq!(out.assignments.len(), 2);
        assert_eq!(out.errors[0].song_id, "s1");
        assert_eq!(out.errors[0].message, "missing genre line");
    }
}
