//! Distances between permutations and between fractional permutations.

use crate::error::{MsscError, Result};
use crate::instance::{ElementId, Permutation};
use crate::matrix::{GranularMatrix, StochasticMatrix};
use crate::{EPS_NUM, EPS_ROW};

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(MsscError::SizeMismatch {
            expected: a,
            actual: b,
        });
    }
    Ok(())
}

/// Number of element pairs ordered differently by `a` and `b`.
pub fn kendall_tau(a: &Permutation, b: &Permutation) -> Result<u64> {
    check_len(a.len(), b.len())?;
    // Positions in `b` of the elements listed in `a` order; inversions of this
    // sequence are exactly the discordant pairs.
    let mut seq: Vec<u32> = a.order().iter().map(|&e| b.position(e) as u32).collect();
    let mut buf = vec![0u32; seq.len()];
    Ok(count_inversions(&mut seq, &mut buf))
}

fn count_inversions(v: &mut [u32], buf: &mut [u32]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (lo, hi) = v.split_at_mut(mid);
        count_inversions(lo, &mut buf[..mid]) + count_inversions(hi, &mut buf[mid..])
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[i] <= v[j] {
            buf[k] = v[i];
            i += 1;
        } else {
            buf[k] = v[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    inv
}

/// Spearman's footrule: total displacement of every element.
pub fn footrule_perm(a: &Permutation, b: &Permutation) -> Result<u64> {
    check_len(a.len(), b.len())?;
    Ok((0..a.len())
        .map(|e| {
            let e = ElementId::from(e);
            (a.position(e) as i64 - b.position(e) as i64).unsigned_abs()
        })
        .sum())
}

/// FootRule distance between stochastic matrices: the sum over rows of the
/// line-metric transport cost, evaluated through prefix sums.
pub fn footrule_matrix(a: &StochasticMatrix, b: &StochasticMatrix) -> Result<f64> {
    check_len(a.n(), b.n())?;
    let n = a.n();
    let mut total = 0.0;
    for e in 0..n {
        let (ra, rb) = (a.row(e), b.row(e));
        let (sa, sb): (f64, f64) = (ra.iter().sum(), rb.iter().sum());
        if (sa - sb).abs() > EPS_ROW {
            return Err(MsscError::MarginalMismatch {
                row: e,
                left: sa,
                right: sb,
            });
        }
        let (mut ca, mut cb) = (0.0, 0.0);
        for i in 0..n.saturating_sub(1) {
            ca += ra[i];
            cb += rb[i];
            total += (ca - cb).abs();
        }
    }
    Ok(total)
}

/// The first position at which an element has accumulated mass `1/r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RIndex {
    pub element: ElementId,
    pub index: usize,
}

/// `min { i : Σ_{s≤i} A[e][s] ≥ 1/r }` with `EPS_NUM` slack, 1-indexed.
pub fn r_index(a: &StochasticMatrix, e: ElementId, r: usize) -> RIndex {
    assert!(r >= 1, "granularity must be positive");
    let target = 1.0 / r as f64 - EPS_NUM;
    let mut cum = 0.0;
    let row = a.row(e.index());
    let index = row
        .iter()
        .position(|v| {
            cum += v;
            cum >= target
        })
        .map_or(a.n(), |p| p + 1);
    RIndex { element: e, index }
}

/// Exact r-index of a granular matrix: the first position where the prefix
/// holds at least one unit.
pub fn r_index_units(a: &GranularMatrix, e: ElementId) -> usize {
    let mut cum = 0;
    a.row_units(e.index())
        .iter()
        .position(|&u| {
            cum += u;
            cum >= 1
        })
        .map_or(a.n(), |p| p + 1)
}

fn discordant_pairs(ia: &[usize], ib: &[usize]) -> u64 {
    let n = ia.len();
    let mut count = 0;
    for e in 0..n {
        for f in e + 1..n {
            if ia[e].cmp(&ia[f]) != ib[e].cmp(&ib[f]) {
                count += 1;
            }
        }
    }
    count
}

/// Fractional Kendall-Tau distance on r-indices. A pair counts when its
/// order flips, or when it is tied on exactly one side.
pub fn fractional_kendall_tau(a: &StochasticMatrix, b: &StochasticMatrix, r: usize) -> Result<u64> {
    check_len(a.n(), b.n())?;
    if r == 0 {
        return Err(MsscError::InvalidGranularity(r));
    }
    let idx = |m: &StochasticMatrix| -> Vec<usize> {
        (0..m.n())
            .map(|e| r_index(m, ElementId::from(e), r).index)
            .collect()
    };
    Ok(discordant_pairs(&idx(a), &idx(b)))
}

/// Fractional Kendall-Tau distance evaluated in exact unit arithmetic.
pub fn fractional_kendall_tau_granular(a: &GranularMatrix, b: &GranularMatrix) -> Result<u64> {
    check_len(a.n(), b.n())?;
    if a.granularity() != b.granularity() {
        return Err(MsscError::InvalidGranularity(b.granularity()));
    }
    let idx = |m: &GranularMatrix| -> Vec<usize> {
        (0..m.n())
            .map(|e| r_index_units(m, ElementId::from(e)))
            .collect()
    };
    Ok(discordant_pairs(&idx(a), &idx(b)))
}

/// One move of `mass` in row `moved_element` between adjacent columns.
/// `matrix` is the state after the move.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborStep {
    pub matrix: StochasticMatrix,
    pub moved_element: ElementId,
    pub from_col: usize,
    pub to_col: usize,
    pub mass: f64,
}

const FLOW_TOL: f64 = 1e-12;

/// Monotone (north-west corner) coupling of two rows with equal mass. It is
/// an optimal flow for cost `|i - j|`. Returns `(from, to, mass)` triples.
fn monotone_coupling(a: &[f64], b: &[f64]) -> Vec<(usize, usize, f64)> {
    let n = a.len();
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (a.first().copied().unwrap_or(0.0), b.first().copied().unwrap_or(0.0));
    while i < n && j < n {
        let m = ra.min(rb);
        if m > FLOW_TOL {
            out.push((i, j, m));
        }
        ra -= m;
        rb -= m;
        if ra <= FLOW_TOL {
            i += 1;
            ra = if i < n { a[i] } else { 0.0 };
        }
        if rb <= FLOW_TOL {
            j += 1;
            rb = if j < n { b[j] } else { 0.0 };
        }
    }
    out
}

/// Splits the transformation `a → b` into neighboring stochastic matrices
/// whose column sums never exceed 2 and whose FootRule costs add up to
/// `footrule_matrix(a, b)`.
///
/// Each round picks a column `i` holding mass that flows right and the next
/// flagged column `j > i` holding mass that flows left, with every column in
/// between untouched by the optimal flow. It then slides `ε` of the right
/// mover from `i` to `j`, then `ε` of the left mover from `j` back to `i`.
/// Ties go to the smallest element id, then the smallest column.
pub fn decompose_neighboring(a: &StochasticMatrix, b: &StochasticMatrix) -> Result<Vec<NeighborStep>> {
    check_len(a.n(), b.n())?;
    for (name, m) in [("source", a), ("target", b)] {
        if !m.is_doubly_stochastic() {
            return Err(MsscError::InvalidMatrix(format!("{name} is not doubly stochastic")));
        }
    }
    let n = a.n();
    let mut cur = a.clone();
    let mut steps = Vec::new();
    let max_rounds = 4 * n * n * n + 16;

    for _ in 0..max_rounds {
        // Per column: first element (by id) with mass flowing right / left,
        // and the total amount it sends in that direction.
        let mut right: Vec<Option<(usize, f64)>> = vec![None; n];
        let mut left: Vec<Option<(usize, f64)>> = vec![None; n];
        for e in 0..n {
            for (i, j, m) in monotone_coupling(cur.row(e), b.row(e)) {
                let slot = match j.cmp(&i) {
                    std::cmp::Ordering::Greater => &mut right[i],
                    std::cmp::Ordering::Less => &mut left[i],
                    std::cmp::Ordering::Equal => continue,
                };
                match slot {
                    None => *slot = Some((e, m)),
                    Some((owner, total)) if *owner == e => *total += m,
                    Some(_) => {}
                }
            }
        }
        let flagged: Vec<usize> = (0..n)
            .filter(|&c| right[c].is_some() || left[c].is_some())
            .collect();
        if flagged.is_empty() {
            return Ok(steps);
        }
        let (i, j) = flagged
            .windows(2)
            .map(|w| (w[0], w[1]))
            .find(|&(i, j)| right[i].is_some() && left[j].is_some())
            .ok_or_else(|| {
                MsscError::InvalidMatrix("no right/left column pair in optimal flow".into())
            })?;
        let (e1, m1) = right[i].unwrap();
        let (e2, m2) = left[j].unwrap();
        let eps = m1.min(m2);
        for c in i..j {
            slide(&mut cur, e1, c, c + 1, eps, &mut steps);
        }
        for c in (i + 1..=j).rev() {
            slide(&mut cur, e2, c, c - 1, eps, &mut steps);
        }
    }
    Err(MsscError::InvalidMatrix(
        "neighboring decomposition did not converge".into(),
    ))
}

fn slide(
    cur: &mut StochasticMatrix,
    e: usize,
    from: usize,
    to: usize,
    eps: f64,
    steps: &mut Vec<NeighborStep>,
) {
    let row = cur.row_mut(e);
    row[from] -= eps;
    if row[from].abs() < FLOW_TOL {
        row[from] = 0.0;
    }
    row[to] += eps;
    steps.push(NeighborStep {
        matrix: cur.clone(),
        moved_element: ElementId::from(e),
        from_col: from + 1,
        to_col: to + 1,
        mass: eps,
    });
}
