use crate::error::{MsscError, Result};
use crate::instance::{ElementId, Permutation};
use crate::matrix::GranularMatrix;

/// Furthest-in-future solver for the first-position program: given the
/// elements `e_1..e_T` that must hold at least `1/r` of position 1, builds
/// `Â¹..Â^T` with entries in multiples of `1/r` and minimum FootRule cost.
pub fn greedy_lp_solve(pi0: &Permutation, chosen: &[ElementId], r: usize) -> Result<Vec<GranularMatrix>> {
    let n = pi0.len();
    if r == 0 {
        return Err(MsscError::InvalidGranularity(r));
    }
    if let Some(e) = chosen.iter().find(|e| e.index() >= n) {
        return Err(MsscError::ElementOutOfRange { id: e.index(), n });
    }
    let mut cur = GranularMatrix::from_permutation(pi0, r);
    let mut out = Vec::with_capacity(chosen.len());
    for (t, &et) in chosen.iter().enumerate() {
        if cur.units(et, 1) == 0 {
            advance(&mut cur, et, &chosen[t + 1..]);
        }
        out.push(cur.clone());
    }
    Ok(out)
}

fn advance(m: &mut GranularMatrix, et: ElementId, future: &[ElementId]) {
    let n = m.n();
    let row = m.row_units_mut(et.index());
    let pos = row.iter().position(|&u| u >= 1).expect("rows hold r units");
    row[pos] -= 1;
    row[0] += 1;

    // column j holds one extra unit until it is pushed to j + 1
    for j in 0..pos {
        let donor = (0..n)
            .find(|&e| {
                let row = m.row_units(e);
                row[j] >= 1 && row[..=j].iter().sum::<u32>() >= 2
            })
            .unwrap_or_else(|| furthest_in_future(m, j, et, future));
        let row = m.row_units_mut(donor);
        row[j] -= 1;
        row[j + 1] += 1;
    }
}

fn furthest_in_future(m: &GranularMatrix, col: usize, et: ElementId, future: &[ElementId]) -> usize {
    let next_use = |e: usize| {
        future
            .iter()
            .position(|f| f.index() == e)
            .unwrap_or(usize::MAX)
    };
    let mut best: Option<(usize, usize)> = None;
    for e in 0..m.n() {
        if e == et.index() || m.row_units(e)[col] == 0 {
            continue;
        }
        let d = next_use(e);
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((e, d));
        }
    }
    best.expect("an overfull column has a donor besides e_t").0
}
