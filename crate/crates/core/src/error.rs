use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must have at least one entry")]
    EmptyVector,
    #[error("entry {index} is not a finite number: {value}")]
    NonFiniteEntry { index: usize, value: f64 },
    #[error("entry {index} is not strictly positive: {value}")]
    NonPositiveEntry { index: usize, value: f64 },
    #[error("exponent is NaN")]
    NanExponent,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("invalid campaign config: {0}")]
    InvalidConfig(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
