use thiserror::Error;

use crate::complexes::RegionId;
use crate::exactmath::IntegerVector;

/// Errors raised by the exact geometry and market routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("duplicate bundle {0}")]
    DuplicateBundle(IntegerVector),

    #[error("unknown bundle {0}")]
    UnknownBundle(IntegerVector),

    #[error("empty cell")]
    EmptyCell,

    #[error("unsupported dimension: expected {expected}, found {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("non-conservative labeling around regions {cycle:?}")]
    NonConservative { cycle: Vec<RegionId> },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("instance too large: {size} exceeds cap {cap}")]
    InstanceTooLarge { size: u128, cap: u128 },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid valuation: {0}")]
    InvalidValuation(String),

    #[error("invalid economy: {0}")]
    InvalidEconomy(String),

    #[error("integer overflow while normalizing {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
