use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("prime factor of {0} exceeds the sieve bound")]
    FactorTooLarge(String),
    #[error("not a Cantor set: {0}")]
    NotCantor(String),
    #[error("IFS not normalized to [0,1]: {0}")]
    NotNormalized(String),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("germs do not chain: {0}")]
    ChainMismatch(String),
    #[error("invalid object: {0}")]
    Invalid(String),
    #[error("orientation reversal needs a palindromic IFS")]
    NotInvertible,
    #[error("point not covered: {0}")]
    NotCovered(String),
    #[error("parse error at {location}: {message} (offending token `{token}`)")]
    Parse {
        location: String,
        token: String,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            token: token.into(),
            message: message.into(),
        }
    }
}
