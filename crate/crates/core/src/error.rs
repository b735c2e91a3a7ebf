use alloc::string::String;

/// Errors raised by construction, encoding and analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("{what} exceeds budget: {required} > {limit}")]
    Budget {
        what: &'static str,
        required: u64,
        limit: u64,
    },
    #[error("message violates {bound}: {detail}")]
    ConstraintViolation { bound: &'static str, detail: String },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) | Error::Parameter(_) => "parameter",
            Error::Configuration(_) => "configuration",
            Error::Budget { .. } => "budget",
            Error::ConstraintViolation { .. } => "constraint_violation",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
