use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::GatewayError;
use crate::text::sha256_hex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

/// The request body sent to `/chat/completions`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
}

impl ChatRequest {
    pub fn user(model: &str, content: &str, temperature: f64) -> Self {
        Self {
            model: model.to_string(),
            messages: vec![ChatMessage {
                role: "user".into(),
                content: content.to_string(),
            }],
            temperature,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("request serializes")
    }

    /// Content hash used as the replay key.
    pub fn digest(&self) -> String {
        sha256_hex(&self.to_json())
    }
}

/// One logged call, successful or not.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChatExchange {
    pub request: ChatRequest,
    pub request_hash: String,
    pub response: Option<String>,
    pub error: Option<String>,
    pub status: Option<u16>,
    pub latency: f64,
    pub attempt_count: u32,
    pub timestamp: String,
}

/// Append-only JSONL exchange log with a single writer.
pub struct ExchangeLog {
    file: Mutex<File>,
}

impl ExchangeLog {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, GatewayError> {
        let path = path.as_ref();
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(GatewayError::Log)?;
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(GatewayError::Log)?;
        Ok(Self { file: Mutex::new(file) })
    }

    pub fn append(&self, exchange: &ChatExchange) -> Result<(), GatewayError> {
        let mut line = serde_json::to_string(exchange).expect("exchange serializes");
        line.push('\n');
        let mut file = self.file.lock().unwrap();
        file.write_all(line.as_bytes()).map_err(GatewayError::Log)?;
        file.flush().map_err(GatewayError::Log)
    }
}

pub fn read_exchanges(path: impl AsRef<Path>) -> Result<Vec<ChatExchange>, GatewayError> {
    let file = File::open(path.as_ref()).map_err(GatewayError::Log)?;
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(GatewayError::Log)?;
        if line.trim().is_empty() {
            continue;
        }
        let exchange =
            serde_json::from_str(&line).map_err(|e| GatewayError::MalformedLog(format!("line {}: {e}", idx + 1)))?;
        out.push(exchange);
    }
    Ok(out)
}

/// Logged outcomes keyed by request hash; a success beats any failure.
pub(crate) fn replay_index(exchanges: Vec<ChatExchange>) -> HashMap<String, ChatExchange> {
    let mut index: HashMap<String, ChatExchange> = HashMap::new();
    for exchange in exchanges {
        let keep_existing = index
            .get(&exchange.request_hash)
            .is_some_and(|prev| prev.response.is_some() && exchange.response.is_none());
        if !keep_existing {
            index.insert(exchange.request_hash.clone(), exchange);
        }
    }
    index
}
