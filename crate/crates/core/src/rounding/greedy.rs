use crate::error::{MsscError, Result};
use crate::instance::{ElementId, Instance, Permutation, SolutionSequence};
use crate::matrix::FractionalSequence;
use crate::EPS_ROW;

/// Moves `e` to position 1, keeping everyone else in order. The cost is the
/// number of elements `e` jumps over.
pub fn move_to_front(pi: &Permutation, e: ElementId) -> (Permutation, u64) {
    let pos = pi.position(e);
    let order = std::iter::once(e).chain(pi.order().iter().copied().filter(|&x| x != e));
    let moved = Permutation::from_order(order).expect("reordering keeps a permutation");
    (moved, pos as u64 - 1)
}

/// Greedy rounding: each round moves to the front the smallest-id request
/// member holding at least `1/|R_t|` of position 1.
///
/// Returns the permutations and the chosen elements `e_1..e_T`.
pub fn greedy_round(frac: &FractionalSequence, inst: &Instance) -> Result<(SolutionSequence, Vec<ElementId>)> {
    if frac.matrices.len() != inst.horizon() {
        return Err(MsscError::SizeMismatch {
            expected: inst.horizon(),
            actual: frac.matrices.len(),
        });
    }
    let mut perms = Vec::with_capacity(inst.horizon());
    let mut chosen = Vec::with_capacity(inst.horizon());
    let mut cur = inst.pi0().clone();
    for (t, (m, req)) in frac.matrices.iter().zip(inst.requests()).enumerate() {
        let threshold = 1.0 / req.len() as f64 - EPS_ROW;
        let e = req
            .members()
            .iter()
            .copied()
            .find(|&e| m.entry(e, 1) >= threshold)
            .ok_or(MsscError::InfeasibleFractional { round: t + 1 })?;
        cur = move_to_front(&cur, e).0;
        perms.push(cur.clone());
        chosen.push(e);
    }
    Ok((SolutionSequence::new(perms), chosen))
}
