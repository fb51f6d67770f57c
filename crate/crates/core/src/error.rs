use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: invalid UTF-8 at byte offset {offset}")]
    Encoding { path: PathBuf, offset: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: invalid dependency arc: {message}")]
    InvalidArc { line: usize, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid token {0:?}: tokens must be non-empty and contain no whitespace")]
    InvalidToken(String),

    #[error("corpus contains no tokens")]
    EmptyCorpus,

    #[error("sentence has no tokens")]
    EmptySentence,

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by unreadable or malformed input, as opposed
    /// to inputs that parse but violate a metric's preconditions.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::Encoding { .. }
                | Error::Parse { .. }
                | Error::InvalidArc { .. }
                | Error::Schema(_)
                | Error::InvalidToken(_)
        )
    }
}
