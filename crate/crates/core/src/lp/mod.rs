//! Linear programs: a dense two-phase simplex and builders for the
//! transportation, Fractional-MTF and first-position programs.

mod builders;
mod simplex;

use std::collections::HashSet;
use std::fmt::{self, Write as _};

pub use builders::{
    build_first_position_lp, build_fractional_mtf, build_fractional_mtf_compact, build_transport_lp, extract_matrices,
    solve_first_position_lp, solve_fractional_mtf,
};
pub use simplex::simplex_solve;

/// Feasibility tolerance for simplex output.
pub const EPS_LP: f64 = 1e-7;

/// Structured variable name. Rounds `t` and positions `i`, `j` are 1-indexed;
/// `e` is the element id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarTag {
    Mass { t: usize, e: usize, i: usize },
    Flow { t: usize, e: usize, i: usize, j: usize },
}

impl fmt::Display for VarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarTag::Mass { t, e, i } => write!(f, "A_{t}_{e}_{i}"),
            VarTag::Flow { t, e, i, j } => write!(f, "f_{t}_{e}_{i}_{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

/// A sparse constraint row `Σ coeff·x  rel  rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn lhs(&self, values: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(k, c)| c * values[k]).sum()
    }

    pub fn is_satisfied(&self, values: &[f64], tol: f64) -> bool {
        let lhs = self.lhs(values);
        match self.relation {
            Relation::Eq => (lhs - self.rhs).abs() <= tol,
            Relation::Ge => lhs >= self.rhs - tol,
            Relation::Le => lhs <= self.rhs + tol,
        }
    }
}

/// `minimize c·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
    tags: Vec<VarTag>,
}

impl LinearProgram {
    /// One variable per tag, zero objective, no constraints.
    pub fn new(tags: Vec<VarTag>) -> Self {
        LinearProgram {
            objective: vec![0.0; tags.len()],
            constraints: Vec::new(),
            tags,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.tags.len()
    }

    pub fn tags(&self) -> &[VarTag] {
        &self.tags
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn set_cost(&mut self, var: usize, cost: f64) {
        self.objective[var] = cost;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Checks index arity, finiteness, and tag uniqueness.
    pub fn check(&self) -> Result<(), String> {
        let nv = self.num_vars();
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err("non-finite objective coefficient".into());
        }
        for (k, row) in self.constraints.iter().enumerate() {
            if !row.rhs.is_finite() {
                return Err(format!("constraint {k} has non-finite rhs"));
            }
            for &(v, c) in &row.coeffs {
                if v >= nv {
                    return Err(format!("constraint {k} references variable {v} of {nv}"));
                }
                if !c.is_finite() {
                    return Err(format!("constraint {k} has a non-finite coefficient"));
                }
            }
        }
        let mut seen = HashSet::with_capacity(nv);
        if let Some(dup) = self.tags.iter().find(|t| !seen.insert(**t)) {
            return Err(format!("duplicate variable tag {dup}"));
        }
        Ok(())
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }

    /// CPLEX-style LP text: objective, one constraint per line, bounds.
    pub fn to_lp_text(&self) -> String {
        fn term(out: &mut String, first: &mut bool, c: f64, name: &VarTag) {
            if c >= 0.0 {
                if !*first {
                    out.push_str(" + ");
                }
            } else {
                out.push_str(if *first { "- " } else { " - " });
            }
            let a = c.abs();
            if a != 1.0 {
                let _ = write!(out, "{a} ");
            }
            let _ = write!(out, "{name}");
            *first = false;
        }

        let mut out = String::from("Minimize\n obj: ");
        let mut first = true;
        for (k, &c) in self.objective.iter().enumerate() {
            if c != 0.0 {
                term(&mut out, &mut first, c, &self.tags[k]);
            }
        }
        if first {
            out.push('0');
        }
        out.push_str("\nSubject To\n");
        for (k, row) in self.constraints.iter().enumerate() {
            let _ = write!(out, " c{k}: ");
            let mut first = true;
            for &(v, c) in &row.coeffs {
                term(&mut out, &mut first, c, &self.tags[v]);
            }
            if first {
                out.push('0');
            }
            let rel = match row.relation {
                Relation::Eq => "=",
                Relation::Ge => ">=",
                Relation::Le => "<=",
            };
            let _ = writeln!(out, " {rel} {}", row.rhs);
        }
        out.push_str("Bounds\n");
        for tag in &self.tags {
            let _ = writeln!(out, " {tag} >= 0");
        }
        out.push_str("End\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// Iteration cap hit or the final feasibility audit failed.
    Stalled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective_value: f64,
    pub iterations: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_text_lists_one_constraint_per_line() {
        let mut lp = LinearProgram::new(vec![
            VarTag::Mass { t: 1, e: 0, i: 1 },
            VarTag::Flow { t: 1, e: 0, i: 1, j: 2 },
        ]);
        lp.set_cost(1, 1.0);
        lp.add_constraint(vec![(0, 1.0), (1, -2.0)], Relation::Ge, 3.0);
        lp.add_constraint(vec![(1, 1.0)], Relation::Le, 1.0);
        let text = lp.to_lp_text();
        assert!(text.contains("obj: f_1_0_1_2"));
        assert!(text.contains(" c0: A_1_0_1 - 2 f_1_0_1_2 >= 3\n"));
        assert!(text.contains(" c1: f_1_0_1_2 <= 1\n"));
        assert!(text.ends_with("End\n"));
    }

    #[test]
    fn check_catches_duplicate_tags_and_bad_indices() {
        let tag = VarTag::Mass { t: 1, e: 0, i: 1 };
        assert!(LinearProgram::new(vec![tag, tag]).check().is_err());
        let mut lp = LinearProgram::new(vec![tag]);
        lp.add_constraint(vec![(3, 1.0)], Relation::Eq, 1.0);
        assert!(lp.check().is_err());
    }
}
