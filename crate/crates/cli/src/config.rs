use std::path::{Path, PathBuf};

use lyricav::contrastive::{EncoderParams, TrainingConfig};
use lyricav::corpus::{CleanOptions, QuantileMethod};
use lyricav::evaluation::ReportFormat;
use lyricav::gateway::GatewayConfig;
use lyricav::pairs::{AugmentationSpec, PairSetSpec};
use lyricav::PromptLanguage;
use serde::Deserialize;

use crate::failure::Failure;

/// Artifact locations. Unset file paths must then be given as flags.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Paths {
    pub raw: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub labeled: Option<PathBuf>,
    pub pairs: Option<PathBuf>,
    pub models: PathBuf,
    pub reports: PathBuf,
    pub logs: PathBuf,
}

impl Default for Paths {
    fn default() -> Self {
        Self {
            raw: None,
            corpus: None,
            labeled: None,
            pairs: None,
            models: "models".into(),
            reports: "reports".into(),
            logs: "logs".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsConfig {
    pub quantile_method: QuantileMethod,
}

impl Default for StatsConfig {
    fn default() -> Self {
        Self {
            quantile_method: QuantileMethod::Linear,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitConfig {
    pub train_fraction: f64,
    pub seed: u64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self {
            train_fraction: 0.8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EncoderConfig {
    pub feature_dim: usize,
    pub embed_dim: usize,
    pub margin: f64,
    pub hash_seed: u64,
    pub max_seq_len: usize,
    pub init_seed: u64,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        Self {
            feature_dim: 4096,
            embed_dim: 256,
            margin: 0.5,
            hash_seed: 0,
            max_seq_len: 128,
            init_seed: 0,
        }
    }
}

impl EncoderConfig {
    pub fn init(&self) -> EncoderParams {
        EncoderParams::init(
            self.feature_dim,
            self.embed_dim,
            self.margin,
            self.hash_seed,
            self.max_seq_len,
            self.init_seed,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LabelingConfig {
    pub languages: Vec<PromptLanguage>,
}

impl Default for LabelingConfig {
    fn default() -> Self {
        Self {
            languages: vec![PromptLanguage::Zh],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZeroShotConfig {
    pub language: PromptLanguage,
}

impl Default for ZeroShotConfig {
    fn default() -> Self {
        Self {
            language: PromptLanguage::Zh,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportConfig {
    pub format: ReportFormat,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            format: ReportFormat::Markdown,
        }
    }
}

/// Everything a run can be configured with. Flags override these values.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub paths: Paths,
    pub clean: CleanOptions,
    pub stats: StatsConfig,
    pub gateway: GatewayConfig,
    pub labeling: LabelingConfig,
    pub zeroshot: ZeroShotConfig,
    pub split: SplitConfig,
    pub pairset: PairSetSpec,
    pub augmentation: AugmentationSpec,
    pub encoder: EncoderConfig,
    pub training: TrainingConfig,
    pub report: ReportConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
        Self::parse(&text).map_err(|m| Failure::invalid(format!("{}: {m}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let config: RunConfig = toml::from_str(text).map_err(|e| e.message().to_string())?;
        config.validate()?;
        Ok(config)
    }

    /// Checks every section against its owning type's invariants.
    pub fn validate(&self) -> Result<(), String> {
        self.gateway.validate().map_err(|e| format!("[gateway] {e}"))?;
        self.pairset.validate().map_err(|e| format!("[pairset] {e}"))?;
        self.augmentation
            .validate()
            .map_err(|e| format!("[augmentation] {e}"))?;
        self.training.validate().map_err(|e| format!("[training] {e}"))?;
        if !(0.0..=1.0).contains(&self.split.train_fraction) {
            return Err(format!(
                "[split] train_fraction must be within [0, 1], got {}",
                self.split.train_fraction
            ));
        }
        if self.labeling.languages.is_empty() {
            return Err("[labeling] languages must not be empty".into());
        }
        let e = &self.encoder;
        if e.feature_dim == 0 || e.embed_dim == 0 || e.max_seq_len == 0 {
            return Err("[encoder] feature_dim, embed_dim and max_seq_len must be positive".into());
        }
        if !(e.margin.is_finite() && e.margin > 0.0) {
            return Err(format!("[encoder] margin must be positive, got {}", e.margin));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_all_defaults() {
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
    }

    #[test]
    fn sections_override_defaults() {
        let config = RunConfig::parse(
            r#"
            [paths]
            corpus = "data/corpus.jsonl"
            [training]
            epochs = 7
            [pairset]
            total_pairs = 40
            [report]
            format = "csv"
            "#,
        )
        .unwrap();
        assert_eq!(config.paths.corpus, Some(PathBuf::from("data/corpus.jsonl")));
        assert_eq!(config.paths.models, PathBuf::from("models"));
        assert_eq!(config.training.epochs, 7);
        assert_eq!(config.training.batch_size, TrainingConfig::default().batch_size);
        assert_eq!(config.pairset.total_pairs, 40);
        assert_eq!(config.report.format, ReportFormat::Csv);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_rejected() {
        assert!(RunConfig::parse("[paths]\ncorpse = \"x\"")
            .unwrap_err()
            .contains("corpse"));
        assert!(RunConfig::parse("[split]\ntrain_fraction = 1.5")
            .unwrap_err()
            .contains("train_fraction"));
        assert!(RunConfig::parse("[pairset]\nper_genre_fraction = 0.0").is_err());
    }
}
