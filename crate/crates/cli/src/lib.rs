//! Command-line front end: reads a scenario file, runs one operation and
//! writes CSV or JSON files into an output directory.
//!
//! Exit status: 0 success, 2 bad configuration or arguments, 3 the physics
//! refuses (dissociation, unidentifiable frequency), 4 a numerical method
//! did not converge. Failures print one line `ERROR <code>: <detail>`.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use parabolic_mr::units::OmegaUnit;
use parabolic_mr::ErrorKind;

pub mod commands;
pub mod config;
pub mod output;

pub use output::Format;

/// Environment variable capping worker threads (0 = one per core).
pub const THREADS_ENV: &str = "PARABOLIC_MR_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn physics(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // keep it on one line
        write!(f, "ERROR {}: {}", self.code, self.message.replace('\n', " "))
    }
}

impl From<parabolic_mr::Error> for CliError {
    fn from(e: parabolic_mr::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Invalid => 2,
            ErrorKind::Physics => 3,
            ErrorKind::Numerical => 4,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum UnitArg {
    #[value(name = "rad/s")]
    RadPerSecond,
    #[value(name = "Hz")]
    Hertz,
}

impl From<UnitArg> for OmegaUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::RadPerSecond => OmegaUnit::RadPerSecond,
            UnitArg::Hertz => OmegaUnit::Hertz,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "parabolic-mr", version, about = "Spin-S oscillator in a parabolic magnetic field")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Scenario file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,

    /// Unit of `omega` and the inversion bracket; overrides the file.
    #[arg(long, global = true, value_enum)]
    pub omega_unit: Option<UnitArg>,

    /// Format of tabular outputs.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Energy levels E_{M,n} for n <= n_max.
    Spectrum,
    /// Transition lines under a selection rule.
    Lines,
    /// Level crossings versus Gbar.
    Crossings,
    /// Recover Omega from measured M -> M+1 lines of one level.
    Invert,
    /// Compare the closed forms with the finite-difference oracle.
    Validate,
    /// Level curves, crossings and lines versus Gbar for the electron
    /// spin-3/2 example; works without a config.
    Figure1,
}

/// Files produced by a command, written together once it has succeeded.
#[derive(Debug, Default)]
pub struct Outputs {
    pub files: Vec<(String, Vec<u8>)>,
    /// Printed to stdout after the files are written.
    pub summary: Vec<String>,
    /// Reported after writing, for results that are still worth keeping.
    pub failure: Option<CliError>,
}

impl Outputs {
    pub fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::invalid(format!("out {}: {e}", dir.display())))?;
        for (name, bytes) in &self.files {
            let path = dir.join(name);
            std::fs::write(&path, bytes)
                .map_err(|e| CliError::invalid(format!("out {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::invalid(format!("{THREADS_ENV} must be a nonnegative integer, got {v:?}"))
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::invalid(format!("{THREADS_ENV}: {e}")))
}

pub fn run(cli: &Cli) -> Result<Vec<String>, CliError> {
    let scenario = match &cli.config {
        Some(path) => Some(config::load_config(path)?),
        None => None,
    };
    let pool = thread_pool()?;
    let outputs = pool.install(|| commands::execute(cli, scenario.as_ref()))?;
    outputs.write(&cli.out)?;
    match outputs.failure {
        Some(e) => Err(e),
        None => Ok(outputs.summary),
    }
}
