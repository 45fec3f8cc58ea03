use thiserror::Error;

use crate::hopf::Basis;

/// Errors raised by the combinatorial and group-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{n}: {word:?}")]
    NotAPermutation { word: Vec<usize>, n: usize },

    #[error("invalid permutation text {0:?}")]
    Parse(String),

    #[error("table entry {index} is {value}, but must be at most {bound}")]
    TableOutOfRange {
        index: usize,
        value: usize,
        bound: usize,
    },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid position set {positions:?} in 1..{n}")]
    InvalidPositionSet { n: usize, positions: Vec<usize> },

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("deconcatenation point {m} out of range for degree {n}")]
    SplitOutOfRange { m: usize, n: usize },

    #[error("({larger},{smaller}) is not a covering inversion of {perm}")]
    NotCoveringInversion {
        larger: usize,
        smaller: usize,
        perm: String,
    },

    #[error("basis mismatch: expected {expected}, got {actual}")]
    BasisMismatch { expected: Basis, actual: Basis },

    #[error("group ut_{n}(F_{q}) is outside the supported range: {reason}")]
    GroupOutOfRange { n: usize, q: u32, reason: String },

    #[error("class function shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid removal sequence: {0}")]
    InvalidRemovalSequence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
