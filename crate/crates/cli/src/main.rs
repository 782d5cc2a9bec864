//! `qgeom`: classify two-qubit and two-qutrit family states, scan parameter
//! regions, map `λ_min` and check stored witness certificates.

mod certs;
mod commands;
mod error;
mod number;
mod output;
mod range;
mod rows;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qutrit_geometry::families::FamilyKind;

use crate::error::CliError;
use crate::range::Range;

#[derive(Debug, Parser)]
#[command(name = "qgeom", version, about = "Entanglement geometry of two-qubit and two-qutrit families")]
pub struct Cli {
    /// Output format (default: text for classify/measure, csv otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a single family state.
    Classify(PointArgs),
    /// Scan a grid over a family's parameters.
    Scan(ScanArgs),
    /// Sweep the Horodecki line.
    Horodecki(HorodeckiArgs),
    /// Map lambda_min over starting points (epsilon, gamma).
    LambdaMap(LambdaMapArgs),
    /// Hilbert-Schmidt measure of a qubit or qutrit2 state.
    Measure(PointArgs),
    /// Re-verify stored witness certificates.
    WitnessCheck(WitnessCheckArgs),
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: qutrit_geometry::Error| e.to_string())
}

fn parse_value(s: &str) -> Result<f64, String> {
    range::parse_number(s)
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// qubit, qutrit2, qutrit3, horodecki or isotropicN.
    #[arg(value_parser = parse_family)]
    pub family: FamilyKind,

    #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
    pub alpha: Option<f64>,

    #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
    pub beta: Option<f64>,

    #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
    pub gamma: Option<f64>,

    #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
    pub b: Option<f64>,

    /// Write the witness certificate (if any) to this file.
    #[arg(long)]
    pub certs: Option<PathBuf>,

    /// Grid size per axis of the fallback certificate search.
    #[arg(long, default_value_t = 200)]
    pub cert_grid: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// qubit, qutrit2, qutrit3, horodecki or isotropicN.
    #[arg(value_parser = parse_family)]
    pub family: FamilyKind,

    /// VALUE or MIN:MAX:STEPS.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<Range>,

    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<Range>,

    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<Range>,

    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Range>,

    /// Certificate file (default: <out>.witnesses.json when --out is set).
    #[arg(long)]
    pub certs: Option<PathBuf>,

    #[arg(long, default_value_t = 200)]
    pub cert_grid: usize,
}

#[derive(Debug, Args)]
pub struct HorodeckiArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "0:5:501")]
    pub b: Range,

    #[arg(long)]
    pub certs: Option<PathBuf>,

    #[arg(long, default_value_t = 200)]
    pub cert_grid: usize,
}

#[derive(Debug, Args)]
pub struct LambdaMapArgs {
    /// Range strictly inside (-1/4, 1/3).
    #[arg(long, allow_hyphen_values = true, default_value = "-0.2499:0.3333:200")]
    pub epsilon: Range,

    /// Range strictly inside (-1, 1).
    #[arg(long, allow_hyphen_values = true, default_value = "-0.99:0.99:199")]
    pub gamma: Range,

    /// Grid size used to bracket the global minimum before refinement.
    #[arg(long, default_value_t = 200)]
    pub refine: usize,
}

#[derive(Debug, Args)]
pub struct WitnessCheckArgs {
    /// Certificate file written by scan, horodecki or classify.
    #[arg(long)]
    pub certs: PathBuf,

    /// Check only this witness id.
    #[arg(long)]
    pub id: Option<String>,

    /// Random separable states per witness.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qgeom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| commands::dispatch(&cli))
}
