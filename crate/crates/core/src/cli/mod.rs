//! Command-line front end: argument parsing, configuration precedence and
//! CSV/JSON rendering of zone tables, spectra and thermal scans.

mod commands;
mod config;
mod table;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{MAX_ATOMS, MAX_GRID, MAX_ZONE_DIM};
pub use config::{parse_config_file, RunConfig};
pub use table::{Cell, Table};
pub use verify::{run_suite, Check, Status, Suite};

pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0} verification check(s) failed")]
    VerificationFailed(usize),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<crate::error::Error> for CliError {
    fn from(e: crate::error::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::VerificationFailed(_) => EXIT_VERIFY_FAILED,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "tavis", version, about = "Zone spectra and thermal emission of the Tavis-Cummings model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// File of `key = value` lines; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the zones of a range of superzones.
    Zones {
        #[arg(long)]
        atoms: Option<u32>,
        #[arg(long = "k-min")]
        k_min: Option<u64>,
        #[arg(long = "k-max")]
        k_max: Option<u64>,
    },
    /// Exact and third-order levels of one zone.
    Spectrum {
        #[arg(long = "M")]
        m: Option<u64>,
        /// Twice the Dicke index.
        #[arg(long, allow_negative_numbers = true)]
        r2: Option<i64>,
    },
    /// Deviation of both Rabi branches from the exact spectrum over a range of M.
    Compare {
        #[arg(long, allow_negative_numbers = true)]
        r2: Option<i64>,
        #[arg(long = "m-min")]
        m_min: Option<u64>,
        #[arg(long = "m-max")]
        m_max: Option<u64>,
    },
    /// Emission intensity per atom on a log-spaced temperature grid.
    Intensity {
        #[arg(long)]
        atoms: Option<u32>,
        /// Cavity frequency in units of the coupling.
        #[arg(long, allow_negative_numbers = true)]
        omega: Option<f64>,
        #[arg(long = "kt-min", allow_negative_numbers = true)]
        kt_min: Option<f64>,
        #[arg(long = "kt-max", allow_negative_numbers = true)]
        kt_max: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        /// Keep only zones with M up to this value.
        #[arg(long = "m-cap")]
        m_cap: Option<u64>,
    },
    /// Run the built-in invariant checks.
    Verify {
        /// all, algebra, spectrum, transform, full-space or thermal.
        #[arg(long)]
        suite: Option<String>,
    },
}

fn s<T: ToString>(v: &Option<T>) -> Option<String> {
    v.as_ref().map(ToString::to_string)
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Zones { .. } => "zones",
            Command::Spectrum { .. } => "spectrum",
            Command::Compare { .. } => "compare",
            Command::Intensity { .. } => "intensity",
            Command::Verify { .. } => "verify",
        }
    }

    fn flags(&self) -> Vec<(&'static str, Option<String>)> {
        match self {
            Command::Zones { atoms, k_min, k_max } => vec![("atoms", s(atoms)), ("k-min", s(k_min)), ("k-max", s(k_max))],
            Command::Spectrum { m, r2 } => vec![("M", s(m)), ("r2", s(r2))],
            Command::Compare { r2, m_min, m_max } => vec![("r2", s(r2)), ("m-min", s(m_min)), ("m-max", s(m_max))],
            Command::Intensity { atoms, omega, kt_min, kt_max, grid, m_cap } => vec![
                ("atoms", s(atoms)),
                ("omega", s(omega)),
                ("kt-min", s(kt_min)),
                ("kt-max", s(kt_max)),
                ("grid", s(grid)),
                ("m-cap", s(m_cap)),
            ],
            Command::Verify { suite } => vec![("suite", s(suite))],
        }
    }
}

/// Merges defaults, the config file and the flags.
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(p) => parse_config_file(p)?,
        None => Vec::new(),
    };
    let mut flags = cli.command.flags();
    flags.push(("format", cli.format.map(|f| if f == Format::Json { "json".into() } else { "csv".into() })));
    RunConfig::resolve(cli.command.name(), &file, &flags)
}

/// Executes a resolved configuration and renders its output.
pub fn execute(cfg: &RunConfig) -> Result<(String, usize), CliError> {
    let format: String = cfg.get("format")?;
    if format != "csv" && format != "json" {
        return Err(CliError::Invalid(format!("format must be csv or json, got `{format}`")));
    }
    let (table, failures) = match cfg.command {
        "zones" => (commands::zones(cfg)?, 0),
        "spectrum" => (commands::spectrum(cfg)?, 0),
        "compare" => (commands::compare(cfg)?, 0),
        "intensity" => (commands::intensity(cfg)?, 0),
        "verify" => verify::verify(&cfg.get::<String>("suite")?)?,
        other => return Err(CliError::Invalid(format!("unknown command `{other}`"))),
    };
    let text = if format == "json" { table.to_json(cfg.command, &cfg.parameters) } else { table.to_csv() };
    Ok((text, failures))
}

/// Full invocation: the output is written once, even when verification fails.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = resolve(cli)?;
    let (text, failures) = execute(&cfg)?;
    match &cli.out {
        Some(path) => fs::write(path, &text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    if failures > 0 {
        return Err(CliError::VerificationFailed(failures));
    }
    Ok(())
}
