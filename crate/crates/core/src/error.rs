use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("exponent {exponent} exceeds the configured cap of {cap}")]
    ExponentCap { exponent: u64, cap: u32 },

    #[error("{what}: {actual} exceeds the limit of {limit}{hint}")]
    Capacity {
        what: &'static str,
        limit: usize,
        actual: usize,
        hint: &'static str,
    },

    #[error("time budget exhausted")]
    Budget,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("prime field of characteristic {0} is not supported")]
    UnsupportedPrime(u64),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors that stem from a size or time limit rather than bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::Capacity { .. } | Error::Budget | Error::ExponentCap { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
