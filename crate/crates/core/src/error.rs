use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid value for `{key}`: {reason}")]
    InvalidKey { key: String, reason: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("unknown initial condition preset `{name}` (expected one of: {expected})")]
    UnknownPreset { name: String, expected: String },

    #[error(transparent)]
    Blowup(#[from] Box<crate::solver::Blowup>),

    #[error("ODE integration produced non-finite values in step {step} (t = {t})")]
    OdeBlowup { t: f64, step: usize },

    #[error("CFL violation at t = {t}: dt * max|u| * N = {value:.4e} exceeds limit {limit}")]
    Cfl { t: f64, value: f64, limit: f64 },

    #[error("trajectory format error: {0}")]
    Format(String),

    #[error("unsupported trajectory format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },

    #[error("truncated file: expected {expected} bytes, found {found}")]
    Truncated { expected: u64, found: u64 },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn key(key: &str, reason: impl Into<String>) -> Self {
        Error::InvalidKey {
            key: key.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
