//! Multistage Min-Sum Set Cover: cost model, distances between
//! permutations and doubly stochastic matrices, the Fractional-MTF linear
//! program, rounding algorithms, and exact solvers for small instances.

pub mod distances;
pub mod error;
pub mod exact;
pub mod instance;
pub mod lp;
pub mod matrix;
pub mod rounding;

/// Tolerance for clamping tiny negative entries and float comparisons.
pub const EPS_NUM: f64 = 1e-9;
/// Tolerance on row and column sums of stochastic matrices.
pub const EPS_ROW: f64 = 1e-7;

pub use error::{MsscError, Result};
pub use instance::{
    covering_cost, total_cost, validate_instance, CostReport, ElementId, Instance, Permutation,
    RawInstance, Request, SolutionSequence, Violation,
};
pub use matrix::{matrix_from_permutation, FractionalSequence, GranularMatrix, StochasticMatrix};
