use thiserror::Error;

use crate::rational::ParseRationalError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A game, profile or generator configuration violates its invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// A document could not be read; `path` locates the offending field.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Rational(#[from] ParseRationalError),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
