use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid discriminant {0}: D must be positive and congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(i64),
    #[error("sigma_m is only supported for m = 1 and m = 3, got m = {0}")]
    UnsupportedSigma(u32),
    #[error("invalid prototype: {0}")]
    InvalidPrototype(String),
    #[error("{0}")]
    Regime(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
