use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic must be 0 or prime, got {0}")]
    InvalidCharacteristic(u64),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("not a unit")]
    NotAUnit,
    #[error("infinite {0}")]
    Infinite(String),
    #[error("condition {condition} fails: {reason}")]
    ConditionFails { condition: String, reason: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidCharacteristic(_)
                | Error::Parse { .. }
                | Error::InvalidWeights(_)
                | Error::InvalidArgument(_)
                | Error::RingMismatch(_)
        )
    }

    /// Stable short identifier, used by the CLI and the C interface.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidCharacteristic(_) => "invalid_characteristic",
            Error::Parse { .. } => "parse",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::RingMismatch(_) => "ring_mismatch",
            Error::ConstantTerm => "constant_term",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotAUnit => "not_a_unit",
            Error::Infinite(_) => "infinite",
            Error::ConditionFails { .. } => "condition_fails",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
