//! Dense-tableau primal simplex with a two-phase start.
//!
//! Pricing is Dantzig's most-negative reduced cost; after a run of degenerate
//! pivots it switches to Bland's smallest-index rule until the objective moves
//! again, which rules out cycling. Artificial variables have no stored column:
//! once one leaves the basis it can never return.

use super::{LinearProgram, LpSolution, LpStatus, Relation, EPS_LP};

const PIVOT_TOL: f64 = 1e-7;
const HARRIS_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-13;
const DEGENERATE_RUN: usize = 64;

struct Tableau {
    /// Structural plus slack/surplus columns.
    ncols: usize,
    width: usize,
    rows: Vec<f64>,
    /// Reduced costs; the last slot is unused.
    obj: Vec<f64>,
    /// Column index of each basic variable; `ncols + r` marks row `r`'s artificial.
    basis: Vec<usize>,
    iterations: usize,
    max_iterations: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
    Stalled,
}

impl Tableau {
    fn m(&self) -> usize {
        self.basis.len()
    }

    fn rhs(&self, r: usize) -> f64 {
        self.rows[r * self.width + self.ncols]
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.rows[r * self.width + c]
    }

    fn is_artificial(&self, r: usize) -> bool {
        self.basis[r] >= self.ncols
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width;
        let inv = 1.0 / self.at(pr, pc);
        let mut nz: Vec<(usize, f64)> = Vec::new();
        {
            let row = &mut self.rows[pr * w..(pr + 1) * w];
            for (k, v) in row.iter_mut().enumerate() {
                if *v != 0.0 {
                    *v *= inv;
                    if v.abs() < ZERO_TOL {
                        *v = 0.0;
                    } else {
                        nz.push((k, *v));
                    }
                }
            }
            row[pc] = 1.0;
        }
        for r in 0..self.m() {
            if r == pr {
                continue;
            }
            let base = r * w;
            let factor = self.rows[base + pc];
            if factor == 0.0 {
                continue;
            }
            let row = &mut self.rows[base..base + w];
            for &(k, v) in &nz {
                let x = row[k] - factor * v;
                row[k] = if x.abs() < ZERO_TOL { 0.0 } else { x };
            }
            row[pc] = 0.0;
        }
        let factor = self.obj[pc];
        if factor != 0.0 {
            for &(k, v) in &nz {
                let x = self.obj[k] - factor * v;
                self.obj[k] = if x.abs() < ZERO_TOL { 0.0 } else { x };
            }
            self.obj[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let candidates = self.obj[..self.ncols]
            .iter()
            .enumerate()
            .filter(|(_, &d)| d < -COST_TOL);
        if bland {
            candidates.map(|(k, _)| k).next()
        } else {
            candidates
                .fold(None, |best: Option<(usize, f64)>, (k, &d)| match best {
                    Some((_, bd)) if bd <= d => best,
                    _ => Some((k, d)),
                })
                .map(|(k, _)| k)
        }
    }

    /// Ratio test. Returns the leaving row and the step length.
    ///
    /// Dantzig mode uses a two-pass Harris test: the first pass bounds the
    /// step with slightly relaxed rows, the second takes the largest pivot
    /// among rows within that bound. Bland mode keeps exact ties and picks
    /// the smallest basic index.
    fn leaving(&self, pc: usize, bland: bool) -> Option<(usize, f64)> {
        let relax = if bland { 0.0 } else { HARRIS_TOL };
        let mut bound = f64::INFINITY;
        for r in 0..self.m() {
            let a = self.at(r, pc);
            if a > PIVOT_TOL {
                bound = bound.min((self.rhs(r).max(0.0) + relax) / a);
            }
        }
        if !bound.is_finite() {
            return None;
        }
        if bland {
            bound += 1e-12 * (1.0 + bound);
        }
        let mut best: Option<usize> = None;
        for r in 0..self.m() {
            let a = self.at(r, pc);
            if a <= PIVOT_TOL || self.rhs(r).max(0.0) / a > bound {
                continue;
            }
            best = match best {
                None => Some(r),
                Some(b) => {
                    let better = if bland {
                        self.basis[r] < self.basis[b]
                    } else {
                        // Artificials leave first, then the larger pivot.
                        match (self.is_artificial(r), self.is_artificial(b)) {
                            (true, false) => true,
                            (false, true) => false,
                            _ => a > self.at(b, pc),
                        }
                    };
                    if better {
                        Some(r)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best.map(|r| (r, self.rhs(r).max(0.0) / self.at(r, pc)))
    }

    fn run(&mut self) -> Outcome {
        let mut degenerate = 0usize;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let Some(pc) = self.entering(bland) else {
                return Outcome::Optimal;
            };
            let Some((pr, theta)) = self.leaving(pc, bland) else {
                return Outcome::Unbounded;
            };
            if self.iterations >= self.max_iterations {
                return Outcome::Stalled;
            }
            self.iterations += 1;
            if theta <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(pr, pc);
        }
    }

    fn reset_objective(&mut self, costs: &[f64]) {
        self.obj.iter_mut().for_each(|v| *v = 0.0);
        self.obj[..costs.len()].copy_from_slice(costs);
        for r in 0..self.m() {
            let b = self.basis[r];
            let cb = if b < costs.len() { costs[b] } else { 0.0 };
            if cb == 0.0 {
                continue;
            }
            for k in 0..self.ncols {
                let a = self.rows[r * self.width + k];
                if a != 0.0 {
                    self.obj[k] -= cb * a;
                }
            }
        }
    }
}

/// Solves `lp` to optimality, or reports infeasibility, unboundedness, or a
/// stall. Identical input always yields bitwise-identical output.
pub fn simplex_solve(lp: &LinearProgram) -> LpSolution {
    let nv = lp.num_vars();
    let fail = |status, iterations| LpSolution {
        status,
        values: vec![0.0; nv],
        objective_value: f64::NAN,
        iterations,
    };
    if lp.check().is_err() {
        return fail(LpStatus::Stalled, 0);
    }

    // Normalize rows to a nonnegative rhs. `>= 0` rows become `<= 0` so they
    // start with a basic slack.
    let mut rows: Vec<(Vec<(usize, f64)>, Relation, f64)> = lp
        .constraints()
        .iter()
        .map(|c| {
            let (flip, rel) = match c.relation {
                _ if c.rhs < 0.0 => (true, c.relation),
                Relation::Ge if c.rhs == 0.0 => (true, c.relation),
                _ => (false, c.relation),
            };
            if flip {
                let rel = match rel {
                    Relation::Eq => Relation::Eq,
                    Relation::Ge => Relation::Le,
                    Relation::Le => Relation::Ge,
                };
                let coeffs = c.coeffs.iter().map(|&(k, v)| (k, -v)).collect();
                (coeffs, rel, -c.rhs)
            } else {
                (c.coeffs.clone(), rel, c.rhs)
            }
        })
        .collect();
    let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let ncols = nv + n_slack;
    let width = ncols + 1;
    let m = rows.len();

    let mut tab = Tableau {
        ncols,
        width,
        rows: vec![0.0; m * width],
        obj: vec![0.0; width],
        basis: vec![0; m],
        iterations: 0,
        max_iterations: 50 * nv.max(1),
    };
    let mut slack = nv;
    for (r, (coeffs, rel, rhs)) in rows.drain(..).enumerate() {
        let base = r * width;
        for (k, v) in coeffs {
            tab.rows[base + k] += v;
        }
        tab.rows[base + ncols] = rhs;
        tab.basis[r] = ncols + r;
        match rel {
            Relation::Le => {
                tab.rows[base + slack] = 1.0;
                tab.basis[r] = slack;
                slack += 1;
            }
            Relation::Ge => {
                tab.rows[base + slack] = -1.0;
                slack += 1;
            }
            Relation::Eq => {}
        }
    }

    // Phase 1: minimize the sum of artificials.
    for r in 0..m {
        if tab.is_artificial(r) {
            for k in 0..ncols {
                let a = tab.rows[r * width + k];
                if a != 0.0 {
                    tab.obj[k] -= a;
                }
            }
        }
    }
    match tab.run() {
        Outcome::Optimal => {}
        Outcome::Unbounded | Outcome::Stalled => return fail(LpStatus::Stalled, tab.iterations),
    }
    let infeasibility: f64 = (0..m)
        .filter(|&r| tab.is_artificial(r))
        .map(|r| tab.rhs(r))
        .sum();
    if infeasibility > EPS_LP {
        return fail(LpStatus::Infeasible, tab.iterations);
    }

    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are redundant and get dropped.
    let mut keep = vec![true; m];
    for r in 0..m {
        if !tab.is_artificial(r) {
            continue;
        }
        let pc = (0..ncols)
            .filter(|&k| tab.at(r, k).abs() > PIVOT_TOL)
            .fold(None, |best: Option<usize>, k| match best {
                Some(b) if tab.at(r, b).abs() >= tab.at(r, k).abs() => best,
                _ => Some(k),
            });
        match pc {
            Some(pc) => tab.pivot(r, pc),
            None => keep[r] = false,
        }
    }
    if keep.iter().any(|k| !k) {
        let mut rows = Vec::with_capacity(tab.rows.len());
        let mut basis = Vec::with_capacity(m);
        for r in (0..m).filter(|&r| keep[r]) {
            rows.extend_from_slice(&tab.rows[r * width..(r + 1) * width]);
            basis.push(tab.basis[r]);
        }
        tab.rows = rows;
        tab.basis = basis;
    }

    // Phase 2.
    tab.reset_objective(lp.objective());
    match tab.run() {
        Outcome::Optimal => {}
        Outcome::Unbounded => return fail(LpStatus::Unbounded, tab.iterations),
        Outcome::Stalled => return fail(LpStatus::Stalled, tab.iterations),
    }

    let mut values = vec![0.0; nv];
    for r in 0..tab.m() {
        let b = tab.basis[r];
        if b < nv {
            let v = tab.rhs(r);
            values[b] = if v.abs() < ZERO_TOL { 0.0 } else { v };
        }
    }
    let audit_ok = values.iter().all(|&v| v >= -EPS_LP)
        && lp.constraints().iter().all(|c| c.is_satisfied(&values, EPS_LP));
    if !audit_ok {
        return fail(LpStatus::Stalled, tab.iterations);
    }
    for v in values.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    LpSolution {
        status: LpStatus::Optimal,
        objective_value: lp.objective_value(&values),
        values,
        iterations: tab.iterations,
    }
}
