use serde::{Deserialize, Serialize};

use super::GatewayError;

pub const DEFAULT_MODEL_ID: &str = "deepseek-ai/DeepSeek-R1-Distill-Llama-70B-free";
pub const DEFAULT_BASE_URL: &str = "https://api.together.xyz/v1";
pub const DEFAULT_API_KEY_ENV: &str = "LLM_API_KEY";

/// Connection and dispatch settings for the chat-completion backend.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GatewayConfig {
    pub base_url: String,
    pub model_id: String,
    /// Name of the environment variable holding the bearer token.
    pub api_key_env: String,
    /// Per-request timeout in seconds.
    pub timeout: f64,
    pub max_retries: u32,
    /// Backoff unit in seconds; attempt `k` sleeps up to `backoff_base * 2^k`.
    pub backoff_base: f64,
    pub concurrency_limit: usize,
    pub requests_per_minute: Option<u32>,
    pub temperature: f64,
}

impl Default for GatewayConfig {
    fn default() -> Self {
        Self {
            base_url: DEFAULT_BASE_URL.into(),
            model_id: DEFAULT_MODEL_ID.into(),
            api_key_env: DEFAULT_API_KEY_ENV.into(),
            timeout: 120.0,
            max_retries: 5,
            backoff_base: 1.0,
            concurrency_limit: 4,
            requests_per_minute: None,
            temperature: 0.0,
        }
    }
}

impl GatewayConfig {
    pub fn validate(&self) -> Result<(), GatewayError> {
        let invalid = |msg: String| Err(GatewayError::InvalidConfig(msg));
        match reqwest::Url::parse(&self.base_url) {
            Ok(url) if matches!(url.scheme(), "http" | "https") => {}
            _ => return invalid(format!("base_url is not an http(s) URL: {}", self.base_url)),
        }
        if self.model_id.trim().is_empty() {
            return invalid("model_id is empty".into());
        }
        if self.timeout.is_nan() || self.timeout <= 0.0 {
            return invalid(format!("timeout must be > 0, got {}", self.timeout));
        }
        if self.backoff_base.is_nan() || self.backoff_base <= 0.0 {
            return invalid(format!("backoff_base must be > 0, got {}", self.backoff_base));
        }
        if self.concurrency_limit == 0 {
            return invalid("concurrency_limit must be >= 1".into());
        }
        if self.requests_per_minute == Some(0) {
            return invalid("requests_per_minute must be >= 1 when set".into());
        }
        if self.temperature.is_nan() || self.temperature < 0.0 {
            return invalid(format!("temperature must be >= 0, got {}", self.temperature));
        }
        Ok(())
    }

    pub fn endpoint(&self) -> String {
        format!("{}/chat/completions", self.base_url.trim_end_matches('/'))
    }
}
