use std::fmt;
use std::path::Path;

use lyricav::contrastive::ContrastiveError;
use lyricav::corpus::CorpusError;
use lyricav::evaluation::EvalError;
use lyricav::gateway::GatewayError;
use lyricav::genre::ReviewError;
use lyricav::jsonl::JsonlError;
use lyricav::pairs::{AugmentError, PairIoError, SpecError, SplitError, StatsError};
use lyricav::zeroshot::ZeroShotError;

/// A command failure, classified by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad flags, config values or file contents. Exit code 1.
    Invalid(String),
    /// Unreadable or unwritable files, or an unreachable backend. Exit code 2.
    Io(String),
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure::Invalid(message.into())
    }

    pub fn io(path: &Path, error: impl fmt::Display) -> Self {
        Failure::Io(format!("{}: {error}", path.display()))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Io(_) => 2,
        }
    }

    pub fn context(self, prefix: impl fmt::Display) -> Self {
        match self {
            Failure::Invalid(m) => Failure::Invalid(format!("{prefix}: {m}")),
            Failure::Io(m) => Failure::Io(format!("{prefix}: {m}")),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

impl From<JsonlError> for Failure {
    fn from(e: JsonlError) -> Self {
        match e {
            JsonlError::Io { .. } => Failure::Io(e.to_string()),
            JsonlError::Record { .. } => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Jsonl(inner) => inner.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<PairIoError> for Failure {
    fn from(e: PairIoError) -> Self {
        match e {
            PairIoError::Jsonl(inner) => inner.into(),
        }
    }
}

impl From<GatewayError> for Failure {
    fn from(e: GatewayError) -> Self {
        match e {
            GatewayError::InvalidConfig(_) => Failure::Invalid(e.to_string()),
            other => Failure::Io(other.to_string()),
        }
    }
}

impl From<ZeroShotError> for Failure {
    fn from(e: ZeroShotError) -> Self {
        match e {
            ZeroShotError::Gateway(inner) => inner.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<ReviewError> for Failure {
    fn from(e: ReviewError) -> Self {
        match &e {
            ReviewError::Csv { source, .. } if source.is_io_error() => Failure::Io(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<ContrastiveError> for Failure {
    fn from(e: ContrastiveError) -> Self {
        match e {
            ContrastiveError::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

macro_rules! invalid_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::Invalid(e.to_string())
            }
        })*
    };
}

invalid_from!(EvalError, SpecError, SplitError, AugmentError, StatsError);
