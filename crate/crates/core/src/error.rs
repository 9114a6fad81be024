use std::path::PathBuf;

use crate::odd_graph::TripleType;

/// Errors raised by construction, verification and export.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("triple type {0} is not a valid type for m = {1}")]
    InvalidType(TripleType, usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An exact identity that must hold did not. Always indicates a bug or a
    /// broken invariant, never bad user input.
    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse { context: context.into(), message: message.to_string() }
    }
}
