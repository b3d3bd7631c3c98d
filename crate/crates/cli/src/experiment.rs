//! Batch experiments: generated instances × algorithms × seeds, written as CSV.

use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use mssc_core::exact::brute_force_opt;
use mssc_core::lp::solve_fractional_mtf;
use mssc_core::rounding::StreamRng;
use mssc_core::{Instance, MsscError};
use rayon::prelude::*;
use serde::Serialize;

use crate::gen::{generate, Distribution, GenParams};
use crate::solve::{solve, Algo};

pub const CSV_HEADER: [&str; 12] = [
    "instance", "n", "T", "r", "algo", "seed", "covering", "moving", "total", "baseline", "ratio", "wall_ms",
];

/// Environment variable capping worker threads (0 or unset means all cores).
pub const THREADS_ENV: &str = "MSSC_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// `(n, T)` pairs.
    pub sizes: Vec<(usize, usize)>,
    pub r: usize,
    pub distribution: Distribution,
    /// Instances per size.
    pub trials: usize,
    /// Rounding seeds `0..seeds` for randomized algorithms.
    pub seeds: u64,
    /// Seed for instance generation.
    pub base_seed: u64,
    pub algorithms: Vec<Algo>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub instance: String,
    pub n: usize,
    #[serde(rename = "T")]
    pub horizon: usize,
    pub r: usize,
    pub algo: Algo,
    /// Rounding seed, empty for deterministic algorithms, or `mean` /
    /// `stderr` on aggregate rows.
    pub seed: String,
    pub covering: f64,
    pub moving: f64,
    pub total: f64,
    pub baseline: Option<f64>,
    pub ratio: Option<f64>,
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub rows: Vec<ExperimentRow>,
    /// `(instance, algorithm, error)` for tasks that could not run.
    pub skipped: Vec<(String, Algo, String)>,
}

struct Prepared {
    label: String,
    inst: Instance,
    baseline: Option<f64>,
}

fn instance_seed(base: u64, n: usize, horizon: usize, trial: usize) -> u64 {
    let mut rng = StreamRng::new(base);
    let mut mix = rng.next_u64();
    for v in [n as u64, horizon as u64, trial as u64] {
        mix = StreamRng::new(mix ^ v).next_u64();
    }
    mix
}

/// Exact optimum when the exact solver accepts the instance, otherwise the
/// Fractional-MTF objective.
fn baseline(inst: &Instance) -> Option<f64> {
    match brute_force_opt(inst) {
        Ok((_, cost)) => Some(cost.total as f64),
        Err(_) => solve_fractional_mtf(inst).ok().map(|f| f.objective),
    }
}

fn ratio(total: f64, baseline: Option<f64>) -> Option<f64> {
    baseline.filter(|&b| b > 0.0).map(|b| total / b)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome, MsscError> {
    let mut params = Vec::new();
    for &(n, horizon) in &cfg.sizes {
        for trial in 0..cfg.trials {
            params.push((
                format!("n{n}-T{horizon}-{trial}"),
                GenParams {
                    n,
                    horizon,
                    r: cfg.r.min(n),
                    distribution: cfg.distribution,
                    seed: instance_seed(cfg.base_seed, n, horizon, trial),
                },
            ));
        }
    }
    let instances = params
        .into_iter()
        .map(|(label, p)| generate(&p).map(|inst| (label, inst)))
        .collect::<Result<Vec<_>, _>>()?;
    if cfg.algorithms.is_empty() {
        return Ok(ExperimentOutcome {
            rows: Vec::new(),
            skipped: Vec::new(),
        });
    }

    with_pool(|| {
        let prepared: Vec<Prepared> = instances
            .into_par_iter()
            .map(|(label, inst)| {
                let baseline = baseline(&inst);
                Prepared { label, inst, baseline }
            })
            .collect();

        let mut tasks = Vec::new();
        for (k, _) in prepared.iter().enumerate() {
            for &algo in &cfg.algorithms {
                if algo.is_randomized() {
                    tasks.extend((0..cfg.seeds).map(|s| (k, algo, Some(s))));
                } else {
                    tasks.push((k, algo, None));
                }
            }
        }
        // collect() keeps task order, so rows come out sorted regardless of scheduling
        let results: Vec<_> = tasks
            .par_iter()
            .map(|&(k, algo, seed)| {
                let p = &prepared[k];
                let start = Instant::now();
                let res = solve(&p.inst, algo, seed.unwrap_or(0));
                (k, algo, seed, res, start.elapsed().as_secs_f64() * 1e3)
            })
            .collect();

        let mut rows = Vec::with_capacity(results.len());
        let mut skipped = Vec::new();
        let mut group: Vec<f64> = Vec::new();
        let mut group_cov: Vec<f64> = Vec::new();
        let mut group_mov: Vec<f64> = Vec::new();
        for (idx, (k, algo, seed, res, wall)) in results.iter().enumerate() {
            let p = &prepared[*k];
            match res {
                Ok(rep) => {
                    rows.push(ExperimentRow {
                        instance: p.label.clone(),
                        n: p.inst.n(),
                        horizon: p.inst.horizon(),
                        r: p.inst.r_bound(),
                        algo: *algo,
                        seed: seed.map(|s| s.to_string()).unwrap_or_default(),
                        covering: rep.covering,
                        moving: rep.moving,
                        total: rep.total,
                        baseline: p.baseline,
                        ratio: ratio(rep.total, p.baseline),
                        wall_ms: Some(*wall),
                    });
                    if seed.is_some() {
                        group.push(rep.total);
                        group_cov.push(rep.covering);
                        group_mov.push(rep.moving);
                    }
                }
                Err(e) => skipped.push((p.label.clone(), *algo, e.to_string())),
            }
            let group_ends = seed.is_some()
                && results
                    .get(idx + 1)
                    .is_none_or(|next| (next.0, next.1) != (*k, *algo));
            if group_ends && !group.is_empty() {
                let (mt, st) = mean_stderr(&group);
                let (mc, sc) = mean_stderr(&group_cov);
                let (mm, sm) = mean_stderr(&group_mov);
                let base = |seed: &str, cov, mov, tot, ratio| ExperimentRow {
                    instance: p.label.clone(),
                    n: p.inst.n(),
                    horizon: p.inst.horizon(),
                    r: p.inst.r_bound(),
                    algo: *algo,
                    seed: seed.to_string(),
                    covering: cov,
                    moving: mov,
                    total: tot,
                    baseline: p.baseline,
                    ratio,
                    wall_ms: None,
                };
                rows.push(base("mean", mc, mm, mt, ratio(mt, p.baseline)));
                rows.push(base("stderr", sc, sm, st, None));
                group.clear();
                group_cov.clear();
                group_mov.clear();
            }
        }
        Ok(ExperimentOutcome { rows, skipped })
    })
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

pub fn rows_to_csv(rows: &[ExperimentRow]) -> std::io::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
