//! Chat-completion transport: request construction, bearer auth, bounded
//! concurrency, rate limiting, retry with full-jitter backoff, and an
//! append-only exchange log that doubles as a replay cache.

mod config;
mod exchange;
mod limits;

use std::collections::HashMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::Rng;

pub use config::{GatewayConfig, DEFAULT_API_KEY_ENV, DEFAULT_BASE_URL, DEFAULT_MODEL_ID};
pub use exchange::{read_exchanges, ChatExchange, ChatMessage, ChatRequest, ExchangeLog};
use limits::{RateLimiter, Semaphore};

const MAX_BACKOFF: Duration = Duration::from_secs(120);

#[derive(Debug, thiserror::Error)]
pub enum GatewayError {
    #[error("invalid gateway config: {0}")]
    InvalidConfig(String),
    #[error("missing credential: {0}")]
    MissingCredential(String),
    #[error("gateway unavailable: {detail} (last status {}, {attempts} attempt(s))", status.map_or("none".to_string(), |s| s.to_string()))]
    Unavailable {
        status: Option<u16>,
        attempts: u32,
        detail: String,
    },
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("no logged exchange for request {0}")]
    ReplayMiss(String),
    #[error("replayed failure: {0}")]
    ReplayedFailure(String),
    #[error("exchange log: {0}")]
    Log(#[source] std::io::Error),
    #[error("malformed exchange log: {0}")]
    MalformedLog(String),
}

/// A successful completion.
#[derive(Clone, Debug, PartialEq)]
pub struct Completion {
    pub content: String,
    pub attempt_count: u32,
}

/// Anything that can answer single-turn prompts in bulk, preserving order.
pub trait ChatBackend: Sync {
    fn complete_batch(&self, prompts: &[String]) -> Vec<Result<String, GatewayError>>;
}

enum Transport {
    Http {
        client: reqwest::blocking::Client,
        api_key: String,
    },
    Replay(HashMap<String, ChatExchange>),
}

pub struct Gateway {
    config: GatewayConfig,
    transport: Transport,
    in_flight: Semaphore,
    rate: Option<RateLimiter>,
    log: Option<ExchangeLog>,
}

enum AttemptOutcome {
    Done(String),
    Retry { status: Option<u16>, detail: String },
    Fatal(GatewayError),
}

impl Gateway {
    /// Live gateway; the API key is read from `config.api_key_env`.
    pub fn new(config: GatewayConfig) -> Result<Self, GatewayError> {
        let key = std::env::var(&config.api_key_env)
            .ok()
            .filter(|k| !k.trim().is_empty())
            .ok_or_else(|| GatewayError::MissingCredential(config.api_key_env.clone()))?;
        Self::with_api_key(config, key)
    }

    pub fn with_api_key(config: GatewayConfig, api_key: impl Into<String>) -> Result<Self, GatewayError> {
        config.validate()?;
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs_f64(config.timeout))
            .build()
            .map_err(|e| GatewayError::InvalidConfig(e.to_string()))?;
        Ok(Self::assemble(
            config,
            Transport::Http {
                client,
                api_key: api_key.into(),
            },
        ))
    }

    /// Offline gateway serving responses from an exchange log by request hash.
    pub fn replay(config: GatewayConfig, log_path: impl AsRef<Path>) -> Result<Self, GatewayError> {
        config.validate()?;
        let index = exchange::replay_index(read_exchanges(log_path)?);
        Ok(Self::assemble(config, Transport::Replay(index)))
    }

    fn assemble(config: GatewayConfig, transport: Transport) -> Self {
        Self {
            in_flight: Semaphore::new(config.concurrency_limit),
            rate: config.requests_per_minute.map(RateLimiter::per_minute),
            config,
            transport,
            log: None,
        }
    }

    /// Appends every exchange to `path`.
    pub fn with_log(mut self, path: impl AsRef<Path>) -> Result<Self, GatewayError> {
        self.log = Some(ExchangeLog::open(path)?);
        Ok(self)
    }

    /// Replaces the per-minute limit with `limit` requests per `window`.
    pub fn with_rate_limit(mut self, limit: usize, window: Duration) -> Self {
        self.rate = Some(RateLimiter::new(limit, window));
        self
    }

    pub fn config(&self) -> &GatewayConfig {
        &self.config
    }

    pub fn is_replay(&self) -> bool {
        matches!(self.transport, Transport::Replay(_))
    }

    /// Sends one user message and returns the first choice's content.
    pub fn complete(&self, user_message: &str) -> Result<Completion, GatewayError> {
        let request = ChatRequest::user(&self.config.model_id, user_message, self.config.temperature);
        let started = Instant::now();
        let (result, status, attempts) = match &self.transport {
            Transport::Replay(index) => replay_lookup(index, &request),
            Transport::Http { client, api_key } => self.send_with_retry(client, api_key, &request),
        };
        if let Some(log) = &self.log {
            let exchange = ChatExchange {
                request_hash: request.digest(),
                request,
                response: result.as_ref().ok().cloned(),
                error: result.as_ref().err().map(|e| e.to_string()),
                status,
                latency: started.elapsed().as_secs_f64(),
                attempt_count: attempts,
                timestamp: chrono::Utc::now().to_rfc3339(),
            };
            log.append(&exchange)?;
        }
        result.map(|content| Completion {
            content,
            attempt_count: attempts,
        })
    }

    /// Completes every message with at most `concurrency_limit` in flight.
    /// Results are aligned with the input.
    pub fn complete_many(&self, messages: &[String]) -> Vec<Result<Completion, GatewayError>> {
        let mut slots: Vec<Option<Result<Completion, GatewayError>>> = (0..messages.len()).map(|_| None).collect();
        let next = AtomicUsize::new(0);
        let workers = self.config.concurrency_limit.min(messages.len());
        let finished = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    scope.spawn(|| {
                        let mut done = Vec::new();
                        loop {
                            let idx = next.fetch_add(1, Ordering::SeqCst);
                            if idx >= messages.len() {
                                return done;
                            }
                            done.push((idx, self.complete(&messages[idx])));
                        }
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("gateway worker panicked"))
                .collect::<Vec<_>>()
        });
        for (idx, result) in finished {
            slots[idx] = Some(result);
        }
        slots.into_iter().map(|r| r.expect("every slot filled")).collect()
    }

    fn send_with_retry(
        &self,
        client: &reqwest::blocking::Client,
        api_key: &str,
        request: &ChatRequest,
    ) -> (Result<String, GatewayError>, Option<u16>, u32) {
        let body = request.to_json();
        let endpoint = self.config.endpoint();
        let mut attempt = 0;
        let (last_status, last_detail) = loop {
            attempt += 1;
            if let Some(rate) = &self.rate {
                rate.acquire();
            }
            let outcome = {
                let _permit = self.in_flight.acquire();
                attempt_once(client, &endpoint, api_key, &body)
            };
            match outcome {
                (AttemptOutcome::Done(content), status) => return (Ok(content), status, attempt),
                (AttemptOutcome::Fatal(mut err), status) => {
                    if let GatewayError::Unavailable { attempts, .. } = &mut err {
                        *attempts = attempt;
                    }
                    return (Err(err), status, attempt);
                }
                (AttemptOutcome::Retry { status, detail }, _) => {
                    if attempt > self.config.max_retries {
                        break (status, detail);
                    }
                }
            }
            std::thread::sleep(self.backoff(attempt - 1));
        };
        let err = GatewayError::Unavailable {
            status: last_status,
            attempts: attempt,
            detail: last_detail,
        };
        (Err(err), last_status, attempt)
    }

    /// Full jitter: uniform in `[0, backoff_base * 2^retry]`.
    fn backoff(&self, retry: u32) -> Duration {
        let ceiling = (self.config.backoff_base * 2f64.powi(retry.min(30) as i32)).min(MAX_BACKOFF.as_secs_f64());
        Duration::from_secs_f64(rand::rng().random_range(0.0..=ceiling))
    }
}

fn attempt_once(
    client: &reqwest::blocking::Client,
    endpoint: &str,
    api_key: &str,
    body: &str,
) -> (AttemptOutcome, Option<u16>) {
    let response = client
        .post(endpoint)
        .bearer_auth(api_key)
        .header(reqwest::header::CONTENT_TYPE, "application/json")
        .body(body.to_string())
        .send();
    let response = match response {
        Ok(r) => r,
        Err(e) => {
            let detail = format!("transport error: {e}");
            return (AttemptOutcome::Retry { status: None, detail }, None);
        }
    };
    let status = response.status().as_u16();
    let text = match response.text() {
        Ok(t) => t,
        Err(e) => {
            let detail = format!("reading body: {e}");
            return (
                AttemptOutcome::Retry {
                    status: Some(status),
                    detail,
                },
                Some(status),
            );
        }
    };
    let outcome = match status {
        200..=299 => match first_choice_content(&text) {
            Some(content) => AttemptOutcome::Done(content),
            None => AttemptOutcome::Fatal(GatewayError::MalformedResponse(truncate(&text, 200))),
        },
        429 | 500..=599 => AttemptOutcome::Retry {
            status: Some(status),
            detail: format!("HTTP {status}"),
        },
        _ => AttemptOutcome::Fatal(GatewayError::Unavailable {
            status: Some(status),
            attempts: 0,
            detail: format!("HTTP {status}: {}", truncate(&text, 200)),
        }),
    };
    (outcome, Some(status))
}

fn first_choice_content(body: &str) -> Option<String> {
    let value: serde_json::Value = serde_json::from_str(body).ok()?;
    value
        .get("choices")?
        .get(0)?
        .get("message")?
        .get("content")?
        .as_str()
        .map(str::to_string)
}

fn truncate(text: &str, max_chars: usize) -> String {
    text.chars().take(max_chars).collect()
}

fn replay_lookup(
    index: &HashMap<String, ChatExchange>,
    request: &ChatRequest,
) -> (Result<String, GatewayError>, Option<u16>, u32) {
    let hash = request.digest();
    match index.get(&hash) {
        Some(ex) => {
            let result = match &ex.response {
                Some(content) => Ok(content.clone()),
                None => Err(GatewayError::ReplayedFailure(ex.error.clone().unwrap_or_default())),
            };
            (result, ex.status, ex.attempt_count)
        }
        None => (Err(GatewayError::ReplayMiss(hash)), None, 0),
    }
}

impl ChatBackend for Gateway {
    fn complete_batch(&self, prompts: &[String]) -> Vec<Result<String, GatewayError>> {
        self.complete_many(prompts)
            .into_iter()
            .map(|r| r.map(|c| c.content))
            .collect()
    }
}
