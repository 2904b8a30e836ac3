use num_bigint::BigInt;
use thiserror::Error;

use crate::ktheory::NumClass;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slope is undefined for the zero class")]
    UndefinedSlope,

    #[error("class {0} is not positive")]
    NotPositive(NumClass),

    #[error("invalid Jordan type: {0}")]
    InvalidJordanType(String),

    /// Row classes that decode to no Jordan type; `index` is 1-based.
    #[error("row classes do not decode to a Jordan type: entry {index} would be {entry}")]
    InvalidRows { index: usize, entry: NumClass },

    #[error("no tautological generator c({i},{basis})")]
    InvalidGenerator { i: u32, basis: String },

    #[error("degree {degree} exceeds the truncation order {max}")]
    DegreeOverflow { degree: u32, max: u32 },

    #[error("expected a total Chern class with constant term 1")]
    NotUnipotent,

    #[error("expected a class without constant term")]
    NotNilpotent,

    #[error("enumeration bound too large: {0}")]
    BoundTooLarge(BigInt),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
