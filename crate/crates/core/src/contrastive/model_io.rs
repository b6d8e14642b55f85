use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ContrastiveError, EncoderParams, HistoryEntry, ThresholdModel, TrainingConfig};

pub const MODEL_FORMAT: &str = "lyricav-contrastive";
pub const MODEL_VERSION: u32 = 1;

/// JSON model container: encoder, selected threshold and the training
/// settings that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub version: u32,
    pub encoder: EncoderParams,
    pub threshold: f64,
    pub best_validation_macro_f1: f64,
    pub training: TrainingConfig,
}

impl ModelFile {
    pub fn new(encoder: EncoderParams, model: &ThresholdModel, training: TrainingConfig) -> Self {
        Self {
            format: MODEL_FORMAT.into(),
            version: MODEL_VERSION,
            encoder,
            threshold: model.threshold,
            best_validation_macro_f1: model.best_validation_macro_f1,
            training,
        }
    }
}

fn model_error(path: &Path, message: impl ToString) -> ContrastiveError {
    ContrastiveError::Model {
        path: path.display().to_string(),
        message: message.to_string(),
    }
}

fn io_error(path: &Path, source: std::io::Error) -> ContrastiveError {
    ContrastiveError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn csv_error(path: &Path, error: csv::Error) -> ContrastiveError {
    if error.is_io_error() {
        match error.into_kind() {
            csv::ErrorKind::Io(source) => io_error(path, source),
            other => model_error(path, format!("{other:?}")),
        }
    } else {
        model_error(path, error)
    }
}

pub fn save_model(model: &ModelFile, path: impl AsRef<Path>) -> Result<(), ContrastiveError> {
    let path = path.as_ref();
    model.encoder.validate()?;
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| io_error(path, e))?;
    }
    let json = serde_json::to_string(model).map_err(|e| model_error(path, e))?;
    std::fs::write(path, json + "\n").map_err(|e| io_error(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<ModelFile, ContrastiveError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let model: ModelFile = serde_json::from_str(&text).map_err(|e| model_error(path, e))?;
    if model.format != MODEL_FORMAT {
        return Err(model_error(path, format!("unexpected format {:?}", model.format)));
    }
    if model.version != MODEL_VERSION {
        return Err(model_error(path, format!("unsupported version {}", model.version)));
    }
    model.encoder.validate()?;
    if !(-1.0..=1.0).contains(&model.threshold) {
        return Err(model_error(
            path,
            format!("threshold {} outside [-1, 1]", model.threshold),
        ));
    }
    Ok(model)
}

/// Writes `step,threshold,macro_f1` rows.
pub fn save_history_csv(history: &[HistoryEntry], path: impl AsRef<Path>) -> Result<(), ContrastiveError> {
    let path = path.as_ref();
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for entry in history {
        writer.serialize(entry).map_err(|e| csv_error(path, e))?;
    }
    writer.flush().map_err(|e| io_error(path, e))
}

pub fn load_history_csv(path: impl AsRef<Path>) -> Result<Vec<HistoryEntry>, ContrastiveError> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    reader
        .deserialize()
        .collect::<Result<Vec<HistoryEntry>, _>>()
        .map_err(|e| csv_error(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_and_history_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let model = ThresholdModel {
            threshold: 0.37,
            best_validation_macro_f1: 0.9,
            history: vec![
                HistoryEntry {
                    step: 50,
                    threshold: 0.37,
                    macro_f1: 0.9,
                },
                HistoryEntry {
                    step: 60,
                    threshold: -0.2,
                    macro_f1: 1.0 / 3.0,
                },
            ],
        };
        let file = ModelFile::new(
            EncoderParams::init(16, 4, 0.5, 3, 128, 5),
            &model,
            TrainingConfig::default(),
        );
        let path = dir.path().join("model.json");
        save_model(&file, &path).unwrap();
        assert_eq!(load_model(&path).unwrap(), file);

        let csv_path = dir.path().join("history.csv");
        save_history_csv(&model.history, &csv_path).unwrap();
        assert!(std::fs::read_to_string(&csv_path)
            .unwrap()
            .starts_with("step,threshold,macro_f1\n50,0.37,0.9\n"));
        assert_eq!(load_history_csv(&csv_path).unwrap(), model.history);
    }

    #[test]
    fn rejects_wrong_format() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        let mut file = ModelFile::new(
            EncoderParams::init(4, 2, 0.5, 0, 128, 0),
            &ThresholdModel {
                threshold: 0.0,
                best_validation_macro_f1: 0.0,
                history: vec![],
            },
            TrainingConfig::default(),
        );
        file.format = "other".into();
        save_model(&file, &path).unwrap();
        assert!(load_model(&path).unwrap_err().to_string().contains("unexpected format"));
    }
}
