use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mssc_cli::experiment::{rows_to_csv, run_experiment, write_atomic, ExperimentConfig};
use mssc_cli::format::{parse_instance, parse_raw_instance, parse_setcover, serialize_instance};
use mssc_cli::gen::{generate, Distribution, GenParams};
use mssc_cli::solve::{solve, Algo, SolveReport};
use mssc_cli::CliError;
use mssc_core::exact::setcover_reduce;
use mssc_core::lp::build_fractional_mtf;
use mssc_core::validate_instance;

#[derive(Parser)]
#[command(name = "mssc", version, about = "Multistage Min-Sum Set Cover solvers and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Solve an instance with one algorithm.
    Solve(SolveArgs),
    /// Run a batch experiment and write a CSV report.
    Experiment(ExperimentArgs),
    /// Build the Mult-MSSC instance of a set-cover input.
    Reduce(ReduceArgs),
    /// Check an instance file.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// Number of rounds.
    #[arg(long = "T", visible_alias = "horizon")]
    horizon: usize,
    /// Largest request size.
    #[arg(long)]
    r: usize,
    #[arg(long, default_value = "uniform-r")]
    distribution: Distribution,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file, or `-` for stdin.
    file: PathBuf,
    /// One of exact, mtf-exact, frac, rand, greedy.
    #[arg(long)]
    algo: Algo,
    /// Seed for randomized rounding.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the report as JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Print the report as a CSV header and row.
    #[arg(long)]
    csv: bool,
    /// Also write the Fractional-MTF program in LP text format.
    #[arg(long, value_name = "PATH")]
    dump_lp: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Comma-separated `NxT` sizes, e.g. `4x3,5x4`.
    #[arg(long, value_parser = parse_size, value_delimiter = ',', required = true)]
    sizes: Vec<(usize, usize)>,
    /// Comma-separated algorithms; an empty value gives a header-only report.
    #[arg(long, default_value = "exact,frac,greedy,rand")]
    algos: String,
    /// Largest request size.
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value = "uniform-r")]
    distribution: Distribution,
    /// Instances per size.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Rounding seeds per instance for randomized algorithms.
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    /// Seed for instance generation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV report path, written atomically.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    /// Set-cover file, or `-` for stdin.
    file: PathBuf,
    /// Number of dummy elements; defaults to elements² · sets.
    #[arg(long)]
    dummies: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Instance file, or `-` for stdin.
    file: PathBuf,
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (n, t) = s
        .split_once('x')
        .ok_or_else(|| format!("expected NxT, found `{s}`"))?;
    let n = n.trim().parse().map_err(|_| format!("bad n in `{s}`"))?;
    let t = t.trim().parse().map_err(|_| format!("bad T in `{s}`"))?;
    Ok((n, t))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(a) => {
            let inst = generate(&GenParams {
                n: a.n,
                horizon: a.horizon,
                r: a.r,
                distribution: a.distribution,
                seed: a.seed,
            })
            .map_err(|e| CliError::Usage(e.to_string()))?;
            write_output(a.out.as_deref(), &serialize_instance(&inst))
        }
        Command::Solve(a) => {
            let inst = parse_instance(&read_input(&a.file)?)?;
            if let Some(path) = &a.dump_lp {
                let text = build_fractional_mtf(&inst).to_lp_text();
                write_output(Some(path), &text)?;
            }
            let report = solve(&inst, a.algo, a.seed)?;
            let text = if a.json {
                report.to_json() + "\n"
            } else if a.csv {
                format!("{}\n{}\n", SolveReport::CSV_HEADER, report.to_csv_row())
            } else {
                report.to_text()
            };
            write_output(None, &text)
        }
        Command::Experiment(a) => {
            let algorithms = a
                .algos
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect::<Result<Vec<Algo>, _>>()
                .map_err(CliError::Usage)?;
            let cfg = ExperimentConfig {
                sizes: a.sizes,
                r: a.r,
                distribution: a.distribution,
                trials: a.trials,
                seeds: a.seeds,
                base_seed: a.seed,
                algorithms,
            };
            let outcome = run_experiment(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
            for (label, algo, err) in &outcome.skipped {
                eprintln!("skipped {label} with {algo}: {err}");
            }
            let bytes = rows_to_csv(&outcome.rows).map_err(|source| CliError::Io {
                path: a.out.display().to_string(),
                source,
            })?;
            write_atomic(&a.out, &bytes).map_err(|source| CliError::Io {
                path: a.out.display().to_string(),
                source,
            })
        }
        Command::Reduce(a) => {
            let sc = parse_setcover(&read_input(&a.file)?)?;
            let inst = setcover_reduce(&sc, a.dummies)?;
            write_output(a.out.as_deref(), &serialize_instance(&inst))
        }
        Command::Validate(a) => {
            let raw = parse_raw_instance(&read_input(&a.file)?)?;
            let violations = validate_instance(&raw);
            if violations.is_empty() {
                write_output(None, "ok\n")
            } else {
                let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
                Err(CliError::Format(mssc_cli::FormatError::Invalid(msgs.join("; "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
