//! Error types shared across the crate.

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by configuration validation, API misuse, data loading, and
/// the runtime itself. The CLI maps these onto distinct exit codes, so the
/// categories are part of the public contract.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid configuration (population too small, bad model parameters, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// API misuse such as dimension mismatches or unevaluated individuals.
    #[error("usage error: {0}")]
    Usage(String),

    /// A transform-data file failed to load. `line` is 1-based; 0 means the
    /// error is not tied to a specific line.
    #[error("data error in {}:{line}: {message}", file.display())]
    Load {
        file: PathBuf,
        line: usize,
        message: String,
    },

    /// A failure during an optimization run (e.g. a batch evaluator returning
    /// the wrong number of fitness values).
    #[error("runtime error: {0}")]
    Runtime(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("record parse error: {0}")]
    Record(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn runtime(msg: impl Into<String>) -> Self {
        Error::Runtime(msg.into())
    }

    pub(crate) fn load(file: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Load {
            file: file.into(),
            line,
            message: message.into(),
        }
    }
}
