use super::rng::StreamRng;
use crate::error::{MsscError, Result};
use crate::instance::{Instance, Permutation, SolutionSequence};
use crate::matrix::{FractionalSequence, StochasticMatrix};

/// The per-element thresholds `α_e`, drawn once in increasing id order and
/// shared by every round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingSeedState {
    pub seed: u64,
    pub alpha: Vec<f64>,
}

impl RoundingSeedState {
    pub fn new(seed: u64, n: usize) -> Self {
        let mut rng = StreamRng::new(seed);
        RoundingSeedState {
            seed,
            alpha: (0..n).map(|_| rng.next_f64()).collect(),
        }
    }
}

/// First 1-indexed position where `min(1, scale · prefix mass) ≥ alpha`,
/// or the row length if the prefix never gets there.
pub fn randomized_index(row: &[f64], alpha: f64, scale: f64) -> usize {
    let mut cum = 0.0;
    row.iter()
        .position(|v| {
            cum += v;
            (scale * cum).min(1.0) >= alpha
        })
        .map_or(row.len(), |p| p + 1)
}

fn round_matrix(m: &StochasticMatrix, alpha: &[f64], scale: f64) -> Permutation {
    let n = m.n();
    let mut keyed: Vec<(usize, usize)> = (0..n)
        .map(|e| (randomized_index(m.row(e), alpha[e], scale), e))
        .collect();
    keyed.sort_unstable();
    Permutation::from_order(keyed.into_iter().map(|(_, e)| e)).expect("sorted ids form a permutation")
}

/// Coupled randomized rounding with `log₂ n` amplification. Elements are
/// sorted by index with ties broken by id, so identical consecutive matrices
/// always yield identical permutations.
pub fn randomized_round(frac: &FractionalSequence, inst: &Instance, seed: u64) -> Result<SolutionSequence> {
    if frac.matrices.len() != inst.horizon() {
        return Err(MsscError::SizeMismatch {
            expected: inst.horizon(),
            actual: frac.matrices.len(),
        });
    }
    let n = inst.n();
    if n < 2 {
        return Ok(SolutionSequence::new(vec![inst.pi0().clone(); inst.horizon()]));
    }
    let state = RoundingSeedState::new(seed, n);
    let scale = (n as f64).log2();
    let perms = frac
        .matrices
        .iter()
        .map(|m| {
            if m.n() != n {
                return Err(MsscError::SizeMismatch {
                    expected: n,
                    actual: m.n(),
                });
            }
            Ok(round_matrix(m, &state.alpha, scale))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SolutionSequence::new(perms))
}
