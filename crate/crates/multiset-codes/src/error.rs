use num_bigint::BigUint;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("cardinalities differ: {left} vs {right}")]
    CardinalityMismatch { left: u64, right: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: BigUint, limit: BigUint },

    #[error("enumeration of {size} items exceeds cap {cap}")]
    EnumerationCapExceeded { size: BigUint, cap: u64 },

    #[error("received word implies {got} deletions, code corrects at most {max}")]
    TooManyDeletions { got: u64, max: u64 },

    #[error("decoding failed: {0}")]
    DecodeFailure(String),

    #[error("deletion pattern is not contained in the word")]
    PatternNotContained,

    #[error("bound not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
