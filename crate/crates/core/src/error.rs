use thiserror::Error;

/// Errors raised by the counting, bounding and enumeration routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("invalid class datum: {0}")]
    InvalidDatum(String),
    #[error("non-integral count {0}; an A-factor case was selected incorrectly")]
    NonIntegral(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("missing input: {0}")]
    MissingInput(&'static str),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
