use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A lower parameter hits a non-positive integer inside the requested range.
    #[error("pole: {0}")]
    Pole(String),

    /// Non-terminating series requested outside its disk of convergence.
    #[error("ill-defined: {0}")]
    IllDefined(String),

    #[error("classification mismatch: expected {expected}, found {found}")]
    Classification {
        expected: &'static str,
        found: &'static str,
    },

    #[error("not Gosper-summable")]
    NotSummable,

    /// An internal exact post-condition failed. Indicates a bug, never bad input.
    #[error("post-condition violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }
}
