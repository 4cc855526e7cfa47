use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("field mismatch: cannot mix \u{221a}{0} with \u{221a}{1}")]
    FieldMismatch(BigInt, BigInt),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    NotAWeight(String),
    #[error("operator does not commute with the odd involution: {0}")]
    NotInQueerCommutant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
