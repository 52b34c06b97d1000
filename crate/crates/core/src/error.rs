use thiserror::Error;

/// Errors raised by the library. Check failures are reported in result
/// structures, not through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size limit: {what} would need {needed} items (limit {limit})")]
    SizeLimit {
        what: String,
        needed: String,
        limit: String,
    },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("order error: {0}")]
    Order(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("division by zero in {0}")]
    DivisionByZero(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn check_dims(expected: usize, got: usize) -> Result<()> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::Dimension { expected, got })
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
