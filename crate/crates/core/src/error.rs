use thiserror::Error;

use crate::lp::LpStatus;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MsscError {
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("element id {id} out of range for universe of size {n}")]
    ElementOutOfRange { id: usize, n: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("empty request")]
    EmptyRequest,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("row marginals differ at row {row}: {left} vs {right}")]
    MarginalMismatch { row: usize, left: f64, right: f64 },

    #[error("invalid granularity r = {0}")]
    InvalidGranularity(usize),

    #[error("infeasible fractional input at round {round}: no request element has enough front mass")]
    InfeasibleFractional { round: usize },

    #[error("LP solver finished with status {0:?}")]
    Solver(LpStatus),

    #[error("instance too large for exact search: {0}")]
    GuardExceeded(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, MsscError>;
