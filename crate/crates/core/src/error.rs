use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sample too small: {statistic} needs at least {required} observations, got {got}")]
    SampleTooSmall {
        statistic: &'static str,
        required: usize,
        got: usize,
    },
    #[error("non-finite observation at index {0}")]
    NonFinite(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{name}={value} lies outside the admissible range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: String,
    },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("{0} has no finite truncation bound; spectral computations need a compact or truncated support")]
    NoTruncation(&'static str),
    #[error("argument {argument} is within {distance:e} of a pole")]
    NearPole { argument: f64, distance: f64 },
    #[error("root bracketing failed: {0}")]
    Bracketing(String),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("requested {requested} eigenvalues but only {available} are available")]
    SpectrumExhausted { requested: usize, available: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
