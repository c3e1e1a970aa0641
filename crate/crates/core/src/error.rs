use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {what} is {actual}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An exact re-verification failed. Indicates a bug, never bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
