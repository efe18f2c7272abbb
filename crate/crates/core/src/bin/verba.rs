use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use verba::experiments::{run_experiment, Params, CATALOG};
use verba::report::Format;

/// Finite-group word-width workbench.
#[derive(Debug, Parser)]
#[command(name = "verba", version, after_help = catalog_help())]
struct Cli {
    /// Experiment id.
    experiment: String,
    /// Field size or list of sizes; recursion depth for nu-bound.
    #[arg(long)]
    q: Option<String>,
    /// Holt parameter, list, or range `a..b`.
    #[arg(long)]
    r: Option<String>,
    /// Prime or list of primes.
    #[arg(long)]
    p: Option<String>,
    /// Rank of the free class-2 group, or a list.
    #[arg(long)]
    d: Option<String>,
    /// Exponent or list of exponents.
    #[arg(long)]
    m: Option<String>,
    /// Group spec as inline JSON or a path to a JSON file.
    #[arg(long)]
    group: Option<String>,
    #[arg(long = "max-index")]
    max_index: Option<String>,
    /// Bound function: `n`, `3n`, `n^2`, `5`, `table:1,2,4`.
    #[arg(long)]
    f: Option<String>,
    /// Beta oracle: `stub` or `empirical`.
    #[arg(long)]
    beta: Option<String>,
    /// Sampled argument tuples for invariance checks.
    #[arg(long)]
    samples: Option<String>,
    #[arg(long, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock time in the report (breaks byte stability).
    #[arg(long)]
    timing: bool,
}

fn catalog_help() -> String {
    format!("Experiments: {}\nEnvironment: VERBA_THREADS caps worker threads.", CATALOG.join(", "))
}

const EXIT_ASSERTION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_INPUT: u8 = 4;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    if let Ok(v) = std::env::var("VERBA_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("verba: cannot configure thread pool: {e}");
                }
            }
            _ => {
                eprintln!("verba: VERBA_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(EXIT_INPUT);
            }
        }
    }

    let mut params = Params::new();
    let pairs = [
        ("q", &cli.q),
        ("r", &cli.r),
        ("p", &cli.p),
        ("d", &cli.d),
        ("m", &cli.m),
        ("group", &cli.group),
        ("max-index", &cli.max_index),
        ("f", &cli.f),
        ("beta", &cli.beta),
        ("samples", &cli.samples),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            params.set(k, v);
        }
    }

    let start = Instant::now();
    let mut report = match run_experiment(&cli.experiment, &params, cli.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verba: {e}");
            return ExitCode::from(if e.is_resource() { EXIT_RESOURCE } else { EXIT_INPUT });
        }
    };
    if cli.timing {
        report.wall_clock_ms = Some(start.elapsed().as_millis() as u64);
    }
    let mut out = std::io::stdout().lock();
    if out.write_all(report.emit(cli.format).as_bytes()).is_err() {
        return ExitCode::FAILURE;
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_ASSERTION)
    }
}
