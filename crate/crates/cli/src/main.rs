//! Command-line front end for the convolution-class approximation library.
//!
//! Subcommands: `kernel`, `bounds`, `witness`, `remez`, `verify`, `sweep`.
//! Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 I/O error.

mod args;
mod commands;
mod emit;

use args::{parse_beta, parse_n_set, parse_p, parse_p_list, parse_psi, PsiArg};
use clap::{Args, Parser, Subcommand};
use commands::{OutputTarget, SweepPlan};
use emit::Format;
use std::path::PathBuf;
use std::process::ExitCode;
use trigapprox::BetaSequence;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invariant(String),
    Io(String),
}

impl From<trigapprox::Error> for CliError {
    fn from(e: trigapprox::Error) -> Self {
        use trigapprox::Error as E;
        match e {
            E::Domain(_) | E::Config(_) | E::DivergentSeries(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "trigapprox",
    version,
    about = "Best uniform trigonometric approximation of periodic convolution classes",
    long_about = "Evaluates convolution kernels, builds extremal witnesses, runs a certified \
                  Remez exchange, and verifies two-sided best-approximation bounds."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the kernel sum of psi(k)cos(kt - beta_k pi/2) on a grid
    Kernel(KernelArgs),
    /// Full bounds report for one parameter point (n, p, psi, beta)
    Bounds(PointArgs),
    /// Emit witness samples and alternation data
    Witness(WitnessArgs),
    /// Best-approximate a uniformly sampled function file
    Remez(RemezArgs),
    /// Run the bound invariants over a parameter grid; nonzero exit on failure
    Verify(GridArgs),
    /// Emit one bounds row per grid point, deterministically ordered
    Sweep(GridArgs),
}

#[derive(Args)]
struct KernelArgs {
    /// Coefficient family: power:r=… | exp:alpha=…,r=… | table:v1,v2,…
    #[arg(long)]
    psi: String,
    /// Phase sequence: const:… | list:…
    #[arg(long, default_value = "const:0")]
    beta: String,
    /// Grid size over [0, 2π)
    #[arg(long, default_value_t = 512)]
    points: usize,
    /// Absolute truncation tolerance for the kernel series
    #[arg(long, default_value_t = 1e-9)]
    tail_eps: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    n: usize,
    /// Ball exponent: 1, 2, 4.5, inf, …
    #[arg(long)]
    p: String,
    #[arg(long)]
    psi: String,
    #[arg(long, default_value = "const:0")]
    beta: String,
    /// Spike half-width for p = 1 (chosen automatically when omitted)
    #[arg(long)]
    delta: Option<f64>,
    /// Remez relative tolerance
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: String,
    #[arg(long)]
    psi: String,
    #[arg(long, default_value = "const:0")]
    beta: String,
    #[arg(long)]
    delta: Option<f64>,
    /// Number of samples over [0, 2π)
    #[arg(long, default_value_t = 256)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RemezArgs {
    /// Sample file: lines `t value` (or `t,value`), uniform over [0, 2π)
    #[arg(long)]
    input: PathBuf,
    /// Approximate by trigonometric polynomials of order n−1
    #[arg(long)]
    n: usize,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Plain-text key = value defaults; flags win
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    psi: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// n grid: `4`, `2..8`, or `2,4,8`
    #[arg(long)]
    n: Option<String>,
    /// p grid: `1,2,inf`
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// csv | jsonl
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; output is identical for every value
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Kernel(a) => {
            let psi = parse_psi(&a.psi).map_err(CliError::Usage)?;
            let beta = parse_beta(&a.beta).map_err(CliError::Usage)?;
            commands::run_kernel(
                psi,
                beta,
                a.points,
                a.tail_eps,
                OutputTarget {
                    format: a.format,
                    path: a.out,
                },
            )
        }
        Command::Bounds(a) => {
            let psi = parse_psi(&a.psi).map_err(CliError::Usage)?;
            let beta = parse_beta(&a.beta).map_err(CliError::Usage)?;
            let p = parse_p(&a.p).map_err(CliError::Usage)?;
            commands::run_bounds(
                a.n,
                p,
                psi,
                beta,
                a.delta,
                a.tol,
                OutputTarget {
                    format: a.format,
                    path: a.out,
                },
            )
        }
        Command::Witness(a) => {
            let psi = parse_psi(&a.psi).map_err(CliError::Usage)?;
            let beta = parse_beta(&a.beta).map_err(CliError::Usage)?;
            let p = parse_p(&a.p).map_err(CliError::Usage)?;
            commands::run_witness(
                a.n,
                p,
                psi,
                beta,
                a.delta,
                a.points,
                OutputTarget {
                    format: a.format,
                    path: a.out,
                },
            )
        }
        Command::Remez(a) => commands::run_remez(
            a.input,
            a.n,
            a.tol,
            OutputTarget {
                format: a.format,
                path: a.out,
            },
        ),
        Command::Verify(a) => run_grid(a, true),
        Command::Sweep(a) => run_grid(a, false),
    }
}

fn run_grid(a: GridArgs, verify: bool) -> Result<(), CliError> {
    let config = match &a.config {
        Some(path) => args::read_config(path).map_err(CliError::Usage)?,
        None => Default::default(),
    };
    let pick = |flag: Option<String>, key: &str| -> Option<String> {
        flag.or_else(|| config.get(key).cloned())
    };

    let psi_raw = pick(a.psi, "psi").ok_or_else(|| CliError::Usage("missing --psi".into()))?;
    let psi: PsiArg = parse_psi(&psi_raw).map_err(CliError::Usage)?;
    let beta_raw = pick(a.beta, "beta").unwrap_or_else(|| "const:0".to_string());
    let beta: BetaSequence = parse_beta(&beta_raw).map_err(CliError::Usage)?;
    let n_raw = pick(a.n, "n").ok_or_else(|| CliError::Usage("missing --n".into()))?;
    let n_set = parse_n_set(&n_raw).map_err(CliError::Usage)?;
    let p_raw = pick(a.p, "p").ok_or_else(|| CliError::Usage("missing --p".into()))?;
    let p_set = parse_p_list(&p_raw).map_err(CliError::Usage)?;
    let delta = match a.delta {
        Some(d) => Some(d),
        None => config
            .get("delta")
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad delta `{s}`")))
            })
            .transpose()?,
    };
    let tol = match a.tol {
        Some(t) => Some(t),
        None => config
            .get("tol")
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad tol `{s}`")))
            })
            .transpose()?,
    };
    let format = commands::resolve_format(pick(a.format, "format").as_deref())?;
    let out = a.out.or_else(|| config.get("out").map(PathBuf::from));
    let jobs = match a.jobs {
        Some(j) => j,
        None => config
            .get("jobs")
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad jobs `{s}`")))
            })
            .transpose()?
            .unwrap_or(1),
    };
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be >= 1".into()));
    }

    commands::run_sweep(
        SweepPlan {
            psi,
            beta,
            n_set,
            p_set,
            delta,
            tol,
            jobs,
            target: OutputTarget { format, path: out },
        },
        verify,
    )
}
