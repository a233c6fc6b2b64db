use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A required file or directory could not be opened or read.
    #[error("resource error: {path}: {message}")]
    Resource { path: PathBuf, message: String },

    #[error("parse error: {file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Input that is well-formed but carries no usable signal
    /// (single-class labels, zero variance, empty marginals).
    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
}

impl Error {
    pub(crate) fn resource(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        Error::Resource {
            path: path.into(),
            message: err.to_string(),
        }
    }

    pub(crate) fn parse(file: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            file: file.into(),
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by missing or unreadable inputs rather than bad content.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
