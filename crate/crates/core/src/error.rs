//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed {what}: {msg}")]
    Parse { what: &'static str, msg: String },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("size mismatch: header declares {expected} bytes, raw file holds {actual}")]
    SizeMismatch { expected: u64, actual: u64 },

    #[error("unsupported {what}: {value}")]
    Unsupported { what: &'static str, value: String },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("empty input: {0}")]
    Empty(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(what: &'static str, msg: impl Into<String>) -> Self {
        Error::Parse {
            what,
            msg: msg.into(),
        }
    }

    /// Process exit code for the command-line front end: 3 for I/O, 4 for
    /// everything numeric or validation related.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 3,
            _ => 4,
        }
    }
}
