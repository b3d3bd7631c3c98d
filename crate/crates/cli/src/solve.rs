//! Runs one algorithm on one instance and reports its costs.

use std::fmt;
use std::str::FromStr;

use mssc_core::exact::{brute_force_mtf, brute_force_opt};
use mssc_core::lp::solve_fractional_mtf;
use mssc_core::rounding::{greedy_round, randomized_round};
use mssc_core::{total_cost, CostReport, Instance, MsscError, SolutionSequence};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    /// Exact optimum by dynamic programming.
    Exact,
    /// Exact optimum restricted to move-to-front solutions.
    MtfExact,
    /// Fractional-MTF relaxation.
    Frac,
    /// Randomized rounding of the relaxation.
    Rand,
    /// Greedy rounding of the relaxation.
    Greedy,
}

impl Algo {
    pub const ALL: [Algo; 5] = [Algo::Exact, Algo::MtfExact, Algo::Frac, Algo::Rand, Algo::Greedy];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Exact => "exact",
            Algo::MtfExact => "mtf-exact",
            Algo::Frac => "frac",
            Algo::Rand => "rand",
            Algo::Greedy => "greedy",
        }
    }

    pub fn is_randomized(self) -> bool {
        self == Algo::Rand
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected exact, mtf-exact, frac, rand or greedy)"))
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Costs of one solve. For `frac` the moving cost is the LP objective in
/// FootRule units and every request is covered at position 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub algo: Algo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
    #[serde(rename = "T")]
    pub horizon: usize,
    pub covering: f64,
    pub moving: f64,
    pub total: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covering_per_round: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moving_per_round: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
}

impl SolveReport {
    fn from_solution(algo: Algo, inst: &Instance, sol: &SolutionSequence, cost: CostReport) -> Self {
        SolveReport {
            algo,
            seed: None,
            n: inst.n(),
            horizon: inst.horizon(),
            covering: cost.total_covering as f64,
            moving: cost.total_moving as f64,
            total: cost.total as f64,
            lp_objective: None,
            covering_per_round: Some(cost.covering),
            moving_per_round: Some(cost.moving),
            permutations: Some(sol.perms.iter().map(|p| p.to_indices()).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub const CSV_HEADER: &'static str = "algo,seed,n,T,covering,moving,total,lp_objective";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.algo,
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.n,
            self.horizon,
            self.covering,
            self.moving,
            self.total,
            self.lp_objective.map(|v| v.to_string()).unwrap_or_default()
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("algo: {}\n", self.algo);
        if let Some(seed) = self.seed {
            out += &format!("seed: {seed}\n");
        }
        out += &format!(
            "n: {}\nT: {}\ncovering: {}\nmoving: {}\ntotal: {}\n",
            self.n, self.horizon, self.covering, self.moving, self.total
        );
        if let Some(v) = self.lp_objective {
            out += &format!("lp_objective: {v}\n");
        }
        out
    }
}

/// Solves `inst` with `algo`. `seed` only matters for `rand`.
pub fn solve(inst: &Instance, algo: Algo, seed: u64) -> Result<SolveReport, MsscError> {
    match algo {
        Algo::Exact => {
            let (sol, cost) = brute_force_opt(inst)?;
            Ok(SolveReport::from_solution(algo, inst, &sol, cost))
        }
        Algo::MtfExact => {
            let mtf = brute_force_mtf(inst)?;
            let cost = total_cost(inst, &mtf.solution)?;
            Ok(SolveReport::from_solution(algo, inst, &mtf.solution, cost))
        }
        Algo::Frac => {
            let frac = solve_fractional_mtf(inst)?;
            let covering = inst.horizon() as f64;
            Ok(SolveReport {
                algo,
                seed: None,
                n: inst.n(),
                horizon: inst.horizon(),
                covering,
                moving: frac.objective,
                total: covering + frac.objective,
                lp_objective: Some(frac.objective),
                covering_per_round: None,
                moving_per_round: None,
                permutations: None,
            })
        }
        Algo::Rand => {
            let frac = solve_fractional_mtf(inst)?;
            let sol = randomized_round(&frac, inst, seed)?;
            let cost = total_cost(inst, &sol)?;
            let mut report = SolveReport::from_solution(algo, inst, &sol, cost);
            report.seed = Some(seed);
            report.lp_objective = Some(frac.objective);
            Ok(report)
        }
        Algo::Greedy => {
            let frac = solve_fractional_mtf(inst)?;
            let (sol, _) = greedy_round(&frac, inst)?;
            let cost = total_cost(inst, &sol)?;
            let mut report = SolveReport::from_solution(algo, inst, &sol, cost);
            report.lp_objective = Some(frac.objective);
            Ok(report)
        }
    }
}
