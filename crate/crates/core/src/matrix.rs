//! Fractional permutations: stochastic matrices with rows as elements and
//! columns as positions.

use crate::error::{MsscError, Result};
use crate::instance::{ElementId, Permutation};
use crate::{EPS_NUM, EPS_ROW};

/// An `n × n` nonnegative matrix whose rows sum to 1. `A[e][i]` is the mass
/// of element `e` at position `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    data: Vec<f64>,
}

impl StochasticMatrix {
    /// Validates row sums and clamps tiny negative entries to zero.
    pub fn new(n: usize, mut data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(MsscError::SizeMismatch {
                expected: n * n,
                actual: data.len(),
            });
        }
        for (k, v) in data.iter_mut().enumerate() {
            if !v.is_finite() || *v < -EPS_NUM {
                return Err(MsscError::InvalidMatrix(format!(
                    "entry ({}, {}) = {v}",
                    k / n,
                    k % n + 1
                )));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let m = StochasticMatrix { n, data };
        for e in 0..n {
            let s: f64 = m.row(e).iter().sum();
            if (s - 1.0).abs() > EPS_ROW {
                return Err(MsscError::InvalidMatrix(format!("row {e} sums to {s}")));
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MsscError::SizeMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        StochasticMatrix::new(n, data)
    }

    /// Builds without validation. Callers maintain the row-sum invariant.
    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        StochasticMatrix { n, data }
    }

    /// The 0-1 matrix of a permutation.
    pub fn from_permutation(pi: &Permutation) -> Self {
        let n = pi.len();
        let mut data = vec![0.0; n * n];
        for (col, e) in pi.order().iter().enumerate() {
            data[e.index() * n + col] = 1.0;
        }
        StochasticMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Mass of `e` at 1-indexed position `pos`.
    pub fn entry(&self, e: ElementId, pos: usize) -> f64 {
        self.data[e.index() * self.n + pos - 1]
    }

    /// Row of element `e`; index 0 holds position 1.
    pub fn row(&self, e: usize) -> &[f64] {
        &self.data[e * self.n..(e + 1) * self.n]
    }

    pub(crate) fn row_mut(&mut self, e: usize) -> &mut [f64] {
        &mut self.data[e * self.n..(e + 1) * self.n]
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for e in 0..self.n {
            for (s, v) in sums.iter_mut().zip(self.row(e)) {
                *s += v;
            }
        }
        sums
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        self.column_sums().iter().all(|s| (s - 1.0).abs() <= EPS_ROW)
    }

    /// Recovers a permutation by taking the argmax position of every row.
    /// Returns `None` when the argmaxes collide.
    pub fn argmax_permutation(&self) -> Option<Permutation> {
        let mut order = vec![usize::MAX; self.n];
        for e in 0..self.n {
            let row = self.row(e);
            let (col, _) = row
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (c, &v)| {
                    if v > best.1 {
                        (c, v)
                    } else {
                        best
                    }
                });
            if order[col] != usize::MAX {
                return None;
            }
            order[col] = e;
        }
        Permutation::from_order(order).ok()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Shorthand for [`StochasticMatrix::from_permutation`].
pub fn matrix_from_permutation(pi: &Permutation) -> StochasticMatrix {
    StochasticMatrix::from_permutation(pi)
}

/// A doubly stochastic matrix whose entries are multiples of `1/r`, stored
/// as integer units in `[0, r]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GranularMatrix {
    n: usize,
    r: u32,
    units: Vec<u32>,
}

impl GranularMatrix {
    pub fn new(n: usize, r: usize, units: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return Err(MsscError::InvalidGranularity(r));
        }
        if units.len() != n * n {
            return Err(MsscError::SizeMismatch {
                expected: n * n,
                actual: units.len(),
            });
        }
        let m = GranularMatrix {
            n,
            r: r as u32,
            units,
        };
        if let Some(msg) = m.check_unit_sums() {
            return Err(MsscError::InvalidMatrix(msg));
        }
        Ok(m)
    }

    pub fn from_permutation(pi: &Permutation, r: usize) -> Self {
        let n = pi.len();
        let mut units = vec![0; n * n];
        for (col, e) in pi.order().iter().enumerate() {
            units[e.index() * n + col] = r as u32;
        }
        GranularMatrix {
            n,
            r: r as u32,
            units,
        }
    }

    /// Returns a description of the first broken row or column sum, if any.
    pub fn check_unit_sums(&self) -> Option<String> {
        let r = self.r;
        for e in 0..self.n {
            let s: u32 = self.row_units(e).iter().sum();
            if s != r {
                return Some(format!("row {e} holds {s} units, expected {r}"));
            }
        }
        for c in 0..self.n {
            let s: u32 = (0..self.n).map(|e| self.units[e * self.n + c]).sum();
            if s != r {
                return Some(format!("column {} holds {s} units, expected {r}", c + 1));
            }
        }
        None
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn granularity(&self) -> usize {
        self.r as usize
    }

    /// Units of `e` at 1-indexed position `pos`.
    pub fn units(&self, e: ElementId, pos: usize) -> u32 {
        self.units[e.index() * self.n + pos - 1]
    }

    pub fn row_units(&self, e: usize) -> &[u32] {
        &self.units[e * self.n..(e + 1) * self.n]
    }

    pub(crate) fn row_units_mut(&mut self, e: usize) -> &mut [u32] {
        &mut self.units[e * self.n..(e + 1) * self.n]
    }

    pub fn to_stochastic(&self) -> StochasticMatrix {
        let r = self.r as f64;
        StochasticMatrix::from_raw(self.n, self.units.iter().map(|&u| u as f64 / r).collect())
    }

    /// FootRule distance scaled by `r`, computed exactly on prefix unit counts.
    pub fn footrule_units(&self, other: &GranularMatrix) -> Result<u64> {
        if self.n != other.n || self.r != other.r {
            return Err(MsscError::SizeMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let mut total = 0u64;
        for e in 0..self.n {
            let (mut ca, mut cb) = (0i64, 0i64);
            for (a, b) in self.row_units(e).iter().zip(other.row_units(e)) {
                ca += *a as i64;
                cb += *b as i64;
                total += (ca - cb).unsigned_abs();
            }
        }
        Ok(total)
    }
}

/// An optimal (or feasible) Fractional-MTF solution `A¹..A^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSequence {
    pub matrices: Vec<StochasticMatrix>,
    /// Total FootRule moving cost.
    pub objective: f64,
}
