use thiserror::Error;

/// Errors raised by the exact and numeric evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot add pi^{left} to pi^{right}")]
    PiPowerMismatch { left: u32, right: u32 },

    #[error("coefficient z^{requested} requested but series is only known through z^{available}")]
    Truncation { requested: usize, available: usize },

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("series must have constant term {expected}")]
    ConstantTerm { expected: &'static str },

    #[error("cyclotomic result is not rational: coefficient of zeta^{degree} is {value}")]
    RationalityViolation { degree: usize, value: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("divergent index {0}: first entry must not be 1")]
    Divergent(String),

    #[error("numeric precondition failed: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
