use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use opsymbol::compute::{self, Op};
use opsymbol::harness::config::{Suite, SuiteConfig};
use opsymbol::harness::suites::run_suite;

#[derive(Parser)]
#[command(name = "opsymbol", version, about = "Exact checks for matrix differential operators and their symbols")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite and report pass/fail counts.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "base-dim", default_value_t = 2)]
        base_dim: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long = "max-xdeg", default_value_t = 2)]
        max_xdeg: u32,
        #[arg(long = "max-order", default_value_t = 3)]
        max_order: u32,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Random morphisms drawn by the morphism suite.
        #[arg(long, default_value_t = 50)]
        specs: usize,
        /// Random pairs checked per morphism.
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include wall-clock duration (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate one operation on JSON input (a single value or an array).
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_op)]
        op: Op,
        /// Degree for `sigma`; defaults to the operator's own order.
        #[arg(long)]
        degree: Option<i64>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: opsymbol::Error| e.to_string())
}

fn parse_op(s: &str) -> Result<Op, String> {
    s.parse().map_err(|e: opsymbol::Error| e.to_string())
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("VERIFY_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("VERIFY_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match cli.command {
        Command::Verify {
            suite,
            seed,
            base_dim,
            rank,
            max_xdeg,
            max_order,
            trials,
            specs,
            pairs,
            format,
            timing,
        } => {
            let config = SuiteConfig {
                suite,
                base_dim,
                rank,
                max_xdeg,
                max_order,
                trials,
                seed,
                specs,
                pairs,
                ..SuiteConfig::default()
            };
            let start = Instant::now();
            let mut report = match run_suite(&config) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if timing {
                report.duration_ms = Some(start.elapsed().as_millis());
            }
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Compute { input, op, degree } => {
            let result = std::fs::read_to_string(&input)
                .map_err(|e| format!("cannot read {}: {e}", input.display()))
                .and_then(|text| serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}")))
                .and_then(|value| compute::parse_operands(value).map_err(|e| e.to_string()))
                .and_then(|operands| compute::run(op, &operands, degree).map_err(|e| e.to_string()));
            match result {
                Ok(value) => {
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}
