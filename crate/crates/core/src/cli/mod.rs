//! Command-line front end.
//!
//! Every subcommand builds a report, prints it in the requested format and
//! maps its verdict to the exit status: 0 when every embedded check passed,
//! 1 when one failed, 2 for usage errors and 3 for runtime errors. Reports on
//! stdout are deterministic; wall times and progress go to stderr.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{parse_rational, Rational};
use crate::arcs::Role;
use crate::simulator::Projection;

pub use commands::{
    run_cross_check, run_distribution, run_oracle, run_simulate, run_verify, CrossCheckReport,
    DistributionReport, OracleReport, Report, SimulateReport, VerifyMode, VerifyReport,
};

/// Exact verification of forward/back equidistribution in DFS of random
/// digraphs with geometric outdegrees.
#[derive(Debug, Parser)]
#[command(name = "dfsgf", version, about)]
pub struct Cli {
    /// Output format of the report on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, env = "DFSGF_WORKERS", global = true)]
    pub workers: Option<usize>,

    /// Cancel denominator factors that divide the numerator after each
    /// recursion step (lower memory, more time).
    #[arg(long, global = true)]
    pub reduce: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check ĞX_n = ĞY_n (extended) and/or its z = w specialization (Knuth)
    /// for every n up to --n-max.
    Verify(VerifyArgs),
    /// Consistency checks between the recursions.
    CrossCheck(CrossCheckArgs),
    /// Exact distribution of one arc count.
    Distribution(DistributionArgs),
    /// Monte Carlo trials compared with the exact laws.
    Simulate(SimulateArgs),
    /// Brute-force enumeration compared with the generating functions.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 9)]
    pub n_max: usize,
    /// Only check the z = w specialization.
    #[arg(long, conflicts_with = "extended")]
    pub knuth_only: bool,
    /// Only check the full identity.
    #[arg(long)]
    pub extended: bool,
    /// First n to check (earlier entries are still computed).
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
}

#[derive(Debug, Args)]
pub struct CrossCheckArgs {
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Largest n for the checks that need the four-variable G_n
    /// (default: min(n-max, 7)).
    #[arg(long)]
    pub g_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistributionArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_p)]
    pub p: Rational,
    #[arg(long, value_parser = parse_role, default_value = "F")]
    pub role: Role,
    #[arg(long, default_value_t = 16)]
    pub kmax: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_p)]
    pub p: Rational,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// A single count (L, F, B, C, T), or extended, extended-swapped, full.
    #[arg(long, value_parser = parse_projection, default_value = "F")]
    pub projection: Projection,
    /// Range of the exact table used for the goodness-of-fit test.
    #[arg(long, default_value_t = 16)]
    pub kmax: usize,
    /// Significance level of the chi-square tests.
    #[arg(long, default_value_t = crate::simulator::DEFAULT_ALPHA)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub max_arcs: usize,
}

fn parse_p(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_role(s: &str) -> Result<Role, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_projection(s: &str) -> Result<Projection, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Runs the parsed command, writing the report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> crate::Result<bool> {
    let report: Box<dyn Report> = match &cli.command {
        Command::Verify(a) => {
            let mode = match (a.knuth_only, a.extended) {
                (true, _) => VerifyMode::Knuth,
                (false, true) => VerifyMode::Extended,
                (false, false) => VerifyMode::Both,
            };
            Box::new(run_verify(a.n_min, a.n_max, mode, cli.reduce)?)
        }
        Command::CrossCheck(a) => {
            Box::new(run_cross_check(a.n_max, a.g_max.unwrap_or(a.n_max.min(7)), cli.reduce)?)
        }
        Command::Distribution(a) => Box::new(run_distribution(a.n, &a.p, a.role, a.kmax)?),
        Command::Simulate(a) => Box::new(run_simulate(a)?),
        Command::Oracle(a) => Box::new(run_oracle(a.n, a.max_arcs)?),
    };
    let text = match cli.format {
        Format::Text => report.text(),
        Format::Json => report.json(),
        Format::Tsv => report.tsv(),
    };
    out.write_all(text.as_bytes()).map_err(|e| crate::Error::InvalidParams(e.to_string()))?;
    Ok(report.passed())
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ crate::Error::InvalidParams(_)) | Err(e @ crate::Error::Parse(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
