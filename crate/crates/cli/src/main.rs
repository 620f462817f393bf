//! `foldy`: expand, verify and sweep Foldy-Wouthuysen series from the command line.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check, 2 on usage or
//! configuration errors.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{FileConfig, ParamFlags};
use crate::error::CliError;
use crate::output::{emit, Format};

/// Environment variable naming the directory reports are written to.
const OUT_DIR_ENV: &str = "FOLDY_OUT_DIR";

#[derive(Parser)]
#[command(name = "foldy", version, about = "Exact Foldy-Wouthuysen series and block-diagonalization checks")]
struct Cli {
    /// TOML file with default values for every subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also write the report into this directory (overrides FOLDY_OUT_DIR).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    /// Mass.
    #[arg(long = "mass", global = true)]
    m: Option<f64>,
    /// Speed of light.
    #[arg(long = "speed", global = true)]
    c: Option<f64>,
    /// Charge.
    #[arg(long = "charge", global = true)]
    q: Option<f64>,
    /// Reduced Planck constant.
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Anomalous magnetic moment.
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu_prime: Option<f64>,
}

impl From<ParamArgs> for ParamFlags {
    fn from(a: ParamArgs) -> Self {
        ParamFlags {
            m: a.m,
            c: a.c,
            q: a.q,
            hbar: a.hbar,
            mu_prime: a.mu_prime,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the operator series X_n or X'_n order by order.
    Expand(commands::expand::ExpandArgs),
    /// Check the closed forms, coefficient identities and Hamiltonian properties.
    Verify(commands::verify::VerifyArgs),
    /// Numeric checks of the exactly solvable cases.
    SpecialCase(commands::special::SpecialArgs),
    /// Closed form against series partial sums and the classical Hamiltonian.
    Sweep(commands::sweep::SweepArgs),
    /// Run every check with default settings and write one combined report.
    Report(commands::report::ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    Dirac,
    DiracPauli,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let env_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let dir = cli.out_dir.clone().or(env_dir).or(file.output.dir.clone());
    let flags = ParamFlags::from(cli.params);
    let ctx = commands::Context::new(&file, &flags)?;
    let outcome = match &cli.command {
        Command::Expand(a) => commands::expand::run(a, &ctx)?,
        Command::Verify(a) => commands::verify::run(a, &ctx)?,
        Command::SpecialCase(a) => commands::special::run(a, &ctx)?,
        Command::Sweep(a) => commands::sweep::run(a, &ctx)?,
        Command::Report(a) => commands::report::run(a, &ctx)?,
    };
    let default = match cli.command {
        Command::Expand(_) => Format::Text,
        Command::Sweep(_) => Format::Csv,
        _ => Format::Json,
    };
    let format = cli.format.or(file.output.format).unwrap_or(default);
    emit(&outcome, format, dir.as_deref())?;
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
