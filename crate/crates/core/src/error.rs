use thiserror::Error;

/// Errors raised by the library. Verification *findings* are never errors;
/// they are recorded in reports.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("monomial of total degree {degree} lies beyond the series cap {cap}")]
    OutOfPrecision { degree: u32, cap: u32 },

    #[error("not a permutation of 1..={len}: {detail}")]
    InvalidPermutation { len: usize, detail: String },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid leaf pair ({i},{j}) for a tree with {n} leaves")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("not in the semigroup: {0}")]
    NotInSemigroup(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    #[error("degenerate system: rank {rank} < {unknowns}")]
    Degenerate { rank: usize, unknowns: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
