use super::{simplex_solve, LinearProgram, LpSolution, LpStatus, Relation, VarTag};
use crate::error::{MsscError, Result};
use crate::instance::{ElementId, Instance, Permutation};
use crate::matrix::{FractionalSequence, StochasticMatrix};
use crate::EPS_ROW;

/// The transportation program whose optimum is the FootRule distance of two
/// stochastic matrices. Kept as an independent check on the closed form.
pub fn build_transport_lp(a: &StochasticMatrix, b: &StochasticMatrix) -> LinearProgram {
    let n = a.n();
    let var = |e: usize, i: usize, j: usize| (e * n + i) * n + j;
    let mut tags = Vec::with_capacity(n * n * n);
    for e in 0..n {
        for i in 0..n {
            for j in 0..n {
                tags.push(VarTag::Flow {
                    t: 1,
                    e,
                    i: i + 1,
                    j: j + 1,
                });
            }
        }
    }
    let mut lp = LinearProgram::new(tags);
    for e in 0..n {
        for i in 0..n {
            for j in 0..n {
                lp.set_cost(var(e, i, j), i.abs_diff(j) as f64);
            }
        }
    }
    for e in 0..n {
        for i in 0..n {
            let coeffs = (0..n).map(|j| (var(e, i, j), 1.0)).collect();
            lp.add_constraint(coeffs, Relation::Eq, a.row(e)[i]);
        }
        for j in 0..n {
            let coeffs = (0..n).map(|i| (var(e, i, j), 1.0)).collect();
            lp.add_constraint(coeffs, Relation::Eq, b.row(e)[j]);
        }
    }
    lp
}

/// Variable layout shared by both sequence programs: `n²T` mass variables
/// followed by `n³T` flow variables.
struct Layout {
    n: usize,
    horizon: usize,
}

impl Layout {
    fn mass(&self, t: usize, e: usize, i: usize) -> usize {
        ((t - 1) * self.n + e) * self.n + i
    }

    fn flow(&self, t: usize, e: usize, i: usize, j: usize) -> usize {
        let n = self.n;
        n * n * self.horizon + (((t - 1) * n + e) * n + i) * n + j
    }
}

/// Builds the doubly-stochastic sequence program with linearized FootRule
/// moving cost, then lets `front` add each round's front-mass constraint.
fn build_sequence_lp<F>(pi0: &Permutation, horizon: usize, mut front: F) -> LinearProgram
where
    F: FnMut(&mut LinearProgram, usize, &dyn Fn(usize) -> usize),
{
    let n = pi0.len();
    let layout = Layout { n, horizon };
    let mut tags = Vec::with_capacity(n * n * horizon * (n + 1));
    for t in 1..=horizon {
        for e in 0..n {
            for i in 0..n {
                tags.push(VarTag::Mass { t, e, i: i + 1 });
            }
        }
    }
    for t in 1..=horizon {
        for e in 0..n {
            for i in 0..n {
                for j in 0..n {
                    tags.push(VarTag::Flow {
                        t,
                        e,
                        i: i + 1,
                        j: j + 1,
                    });
                }
            }
        }
    }
    let mut lp = LinearProgram::new(tags);
    for t in 1..=horizon {
        for e in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        lp.set_cost(layout.flow(t, e, i, j), i.abs_diff(j) as f64);
                    }
                }
            }
        }
    }

    for t in 1..=horizon {
        for e in 0..n {
            let coeffs = (0..n).map(|i| (layout.mass(t, e, i), 1.0)).collect();
            lp.add_constraint(coeffs, Relation::Eq, 1.0);
        }
        for i in 0..n {
            let coeffs = (0..n).map(|e| (layout.mass(t, e, i), 1.0)).collect();
            lp.add_constraint(coeffs, Relation::Eq, 1.0);
        }
        let mass_front = |e: usize| layout.mass(t, e, 0);
        front(&mut lp, t, &mass_front);
        // Flow leaves A^{t-1}[e][i]; A⁰ enters as constants.
        for e in 0..n {
            for i in 0..n {
                let mut coeffs: Vec<(usize, f64)> =
                    (0..n).map(|j| (layout.flow(t, e, i, j), 1.0)).collect();
                let rhs = if t == 1 {
                    if pi0.position(ElementId::from(e)) == i + 1 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    coeffs.push((layout.mass(t - 1, e, i), -1.0));
                    0.0
                };
                lp.add_constraint(coeffs, Relation::Eq, rhs);
            }
        }
        // Flow arrives at A^t[e][j].
        for e in 0..n {
            for j in 0..n {
                let mut coeffs: Vec<(usize, f64)> =
                    (0..n).map(|i| (layout.flow(t, e, i, j), 1.0)).collect();
                coeffs.push((layout.mass(t, e, j), -1.0));
                lp.add_constraint(coeffs, Relation::Eq, 0.0);
            }
        }
    }
    lp
}

/// Same feasible matrices and optimum as [`build_fractional_mtf`], but mass
/// only moves between adjacent positions: `Flow { i, j }` with `|i − j| = 1`.
/// Unit-cost steps along the line reproduce the FootRule cost exactly, and
/// the program has `O(n²T)` variables instead of `O(n³T)`. Row sums follow
/// from conservation and are not stated.
pub fn build_fractional_mtf_compact(inst: &Instance) -> LinearProgram {
    let n = inst.n();
    let horizon = inst.horizon();
    let steps = n.saturating_sub(1);
    let mass = |t: usize, e: usize, i: usize| ((t - 1) * n + e) * n + i;
    // right(t, e, i) carries i -> i+1, left(t, e, i) carries i+1 -> i
    let right = |t: usize, e: usize, i: usize| n * n * horizon + (((t - 1) * n + e) * steps + i) * 2;
    let left = |t: usize, e: usize, i: usize| right(t, e, i) + 1;

    let mut tags = Vec::with_capacity(n * n * horizon + 2 * n * steps * horizon);
    for t in 1..=horizon {
        for e in 0..n {
            for i in 0..n {
                tags.push(VarTag::Mass { t, e, i: i + 1 });
            }
        }
    }
    for t in 1..=horizon {
        for e in 0..n {
            for i in 1..=steps {
                tags.push(VarTag::Flow { t, e, i, j: i + 1 });
                tags.push(VarTag::Flow { t, e, i: i + 1, j: i });
            }
        }
    }
    let mut lp = LinearProgram::new(tags);
    for k in n * n * horizon..lp.num_vars() {
        lp.set_cost(k, 1.0);
    }

    for (t, req) in (1..=horizon).zip(inst.requests()) {
        for i in 0..n {
            let coeffs = (0..n).map(|e| (mass(t, e, i), 1.0)).collect();
            lp.add_constraint(coeffs, Relation::Eq, 1.0);
        }
        let coeffs = req.members().iter().map(|e| (mass(t, e.index(), 0), 1.0)).collect();
        lp.add_constraint(coeffs, Relation::Eq, 1.0);
        // A^t[e][i] = A^{t-1}[e][i] + inflow - outflow
        for e in 0..n {
            for i in 0..n {
                let mut coeffs = vec![(mass(t, e, i), 1.0)];
                if i > 0 {
                    coeffs.push((right(t, e, i - 1), -1.0));
                    coeffs.push((left(t, e, i - 1), 1.0));
                }
                if i < steps {
                    coeffs.push((right(t, e, i), 1.0));
                    coeffs.push((left(t, e, i), -1.0));
                }
                let rhs = if t == 1 {
                    if inst.pi0().position(ElementId::from(e)) == i + 1 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    coeffs.push((mass(t - 1, e, i), -1.0));
                    0.0
                };
                lp.add_constraint(coeffs, Relation::Eq, rhs);
            }
        }
    }
    lp
}

/// Fractional-MTF: each request must hold all of position 1's mass.
pub fn build_fractional_mtf(inst: &Instance) -> LinearProgram {
    build_sequence_lp(inst.pi0(), inst.horizon(), |lp, t, mass_front| {
        let coeffs = inst.requests()[t - 1]
            .members()
            .iter()
            .map(|e| (mass_front(e.index()), 1.0))
            .collect();
        lp.add_constraint(coeffs, Relation::Eq, 1.0);
    })
}

/// The first-position program: the chosen element of round `t` must hold at
/// least `1/r` of position 1.
pub fn build_first_position_lp(pi0: &Permutation, chosen: &[ElementId], r: usize) -> Result<LinearProgram> {
    if r == 0 {
        return Err(MsscError::InvalidGranularity(r));
    }
    if let Some(bad) = chosen.iter().find(|e| e.index() >= pi0.len()) {
        return Err(MsscError::ElementOutOfRange {
            id: bad.index(),
            n: pi0.len(),
        });
    }
    Ok(build_sequence_lp(pi0, chosen.len(), |lp, t, mass_front| {
        let e = chosen[t - 1].index();
        lp.add_constraint(vec![(mass_front(e), 1.0)], Relation::Ge, 1.0 / r as f64);
    }))
}

/// Reads `A¹..A^T` back out of a solved sequence program.
pub fn extract_matrices(sol: &LpSolution, n: usize, horizon: usize) -> Result<Vec<StochasticMatrix>> {
    (0..horizon)
        .map(|t| {
            let start = t * n * n;
            StochasticMatrix::new(n, sol.values[start..start + n * n].to_vec())
        })
        .collect()
}

fn solve_checked(lp: &LinearProgram, n: usize, horizon: usize) -> Result<(Vec<StochasticMatrix>, f64)> {
    let sol = simplex_solve(lp);
    if sol.status != LpStatus::Optimal {
        return Err(MsscError::Solver(sol.status));
    }
    let matrices = extract_matrices(&sol, n, horizon)?;
    if let Some(t) = matrices.iter().position(|m| !m.is_doubly_stochastic()) {
        return Err(MsscError::InvalidMatrix(format!(
            "round {} is not doubly stochastic",
            t + 1
        )));
    }
    Ok((matrices, sol.objective_value))
}

/// Optimal Fractional-MTF solution of `inst`.
pub fn solve_fractional_mtf(inst: &Instance) -> Result<FractionalSequence> {
    let lp = build_fractional_mtf_compact(inst);
    let (matrices, objective) = solve_checked(&lp, inst.n(), inst.horizon())?;
    for (t, (m, req)) in matrices.iter().zip(inst.requests()).enumerate() {
        let front: f64 = req.members().iter().map(|&e| m.entry(e, 1)).sum();
        if (front - 1.0).abs() > EPS_ROW {
            return Err(MsscError::InvalidMatrix(format!(
                "round {} carries front mass {front}",
                t + 1
            )));
        }
    }
    Ok(FractionalSequence { matrices, objective })
}

/// Optimal solution of the first-position program via simplex.
pub fn solve_first_position_lp(
    pi0: &Permutation,
    chosen: &[ElementId],
    r: usize,
) -> Result<(Vec<StochasticMatrix>, f64)> {
    let lp = build_first_position_lp(pi0, chosen, r)?;
    solve_checked(&lp, pi0.len(), chosen.len())
}
