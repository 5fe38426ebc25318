//! Scenario files: strict TOML with the physical parameters at top level
//! and one optional table per subcommand.

use std::path::{Path, PathBuf};

use parabolic_mr::units::OmegaUnit;
use parabolic_mr::{FieldProfile, Spin, SpinSystem};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// kg
    pub mass: Option<f64>,
    /// rad s^-1 T^-1
    pub gamma: Option<f64>,
    pub spin: Option<f64>,
    /// In `omega_unit`.
    pub omega: Option<f64>,
    pub omega_unit: Option<String>,
    /// m
    pub offset: Option<f64>,
    /// m
    pub sample_half_length: Option<f64>,
    /// T
    pub b0: Option<f64>,
    /// T/m
    pub g: Option<f64>,
    /// T/m^2
    pub gbar: Option<f64>,

    #[serde(default)]
    pub spectrum: SpectrumTask,
    #[serde(default)]
    pub lines: LinesTask,
    #[serde(default)]
    pub crossings: CrossingsTask,
    #[serde(default)]
    pub invert: InvertTask,
    #[serde(default)]
    pub validate: ValidateTask,
    #[serde(default)]
    pub figure1: Figure1Task,

    /// Directory the file was read from; relative paths resolve against it.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumTask {
    pub n_max: u32,
}

impl Default for SpectrumTask {
    fn default() -> Self {
        SpectrumTask { n_max: 4 }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RuleName {
    DeltaM1FixedN,
    DeltaN1FixedM,
    AllPairsWithin,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinesTask {
    pub rule: RuleName,
    pub n: u32,
    /// For `all_pairs_within`.
    pub n_max: u32,
    /// For `all_pairs_within`, Hz.
    pub cutoff_hz: Option<f64>,
}

impl Default for LinesTask {
    fn default() -> Self {
        LinesTask {
            rule: RuleName::DeltaM1FixedN,
            n: 0,
            n_max: 2,
            cutoff_hz: None,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CrossingsTask {
    /// T/m^2; default `[0, 0.999 Gbar_crit]`.
    pub gbar_range: Option<[f64; 2]>,
    /// `[M, n]` pairs; default every level with `n <= n_max`.
    pub levels: Option<Vec<(f64, u32)>>,
    pub n_max: u32,
    pub steps: usize,
}

impl Default for CrossingsTask {
    fn default() -> Self {
        CrossingsTask {
            gbar_range: None,
            levels: None,
            n_max: 3,
            steps: 2000,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InvertTask {
    pub n: u32,
    /// In `omega_unit`.
    pub bracket: Option<[f64; 2]>,
    /// Hz.
    pub measured_hz: Option<Vec<f64>>,
    /// CSV with a `freq_hz` column, e.g. a `lines.csv` written by `lines`.
    pub lines_file: Option<PathBuf>,
    /// Hz.
    pub fit_tolerance_hz: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateTask {
    /// Levels compared per sector.
    pub levels: usize,
    /// Pass threshold on the relative error.
    pub tolerance: f64,
    /// Convergence target of the grid refinement.
    pub oracle_tolerance: f64,
}

impl Default for ValidateTask {
    fn default() -> Self {
        ValidateTask {
            levels: 5,
            tolerance: 1e-8,
            oracle_tolerance: 1e-10,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Figure1Task {
    pub gbar_fraction: Option<f64>,
    pub n_max: Option<u32>,
    pub points: Option<usize>,
    pub scan_steps: Option<usize>,
    pub line_level: Option<u32>,
}

pub fn load_config(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))?;
    let mut scenario = parse_config(&text)?;
    scenario.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(scenario)
}

pub fn parse_config(text: &str) -> Result<Scenario, CliError> {
    let scenario: Scenario = toml::from_str(text)
        .map_err(|e| CliError::invalid(format!("config: {}", e.message())))?;
    scenario.check()?;
    Ok(scenario)
}

fn required(name: &'static str, value: Option<f64>) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::invalid(format!("config: missing key {name}")))
}

impl Scenario {
    /// Validates whatever is present; absent keys are checked by the
    /// subcommand that needs them.
    fn check(&self) -> Result<(), CliError> {
        self.unit(None)?;
        if let Some(s) = self.spin {
            Spin::from_f64(s)?;
        }
        FieldProfile::new(
            self.b0.unwrap_or(0.0),
            self.g.unwrap_or(0.0),
            self.gbar.unwrap_or(0.0),
        )?;
        if let (Some(mass), Some(gamma), Some(spin), Some(omega), Some(offset)) =
            (self.mass, self.gamma, self.spin, self.omega, self.offset)
        {
            self.build_system(mass, gamma, spin, self.unit(None)?.to_angular(omega), offset)?;
        }
        Ok(())
    }

    /// The unit for `omega` and the inversion bracket; a command-line
    /// override wins over the file.
    pub fn unit(&self, cli: Option<OmegaUnit>) -> Result<OmegaUnit, CliError> {
        if let Some(u) = cli {
            return Ok(u);
        }
        match &self.omega_unit {
            None => Ok(OmegaUnit::RadPerSecond),
            Some(s) => OmegaUnit::parse(s).ok_or_else(|| {
                CliError::invalid(format!(
                    "config: omega_unit must be \"rad/s\" or \"Hz\", got {s:?}"
                ))
            }),
        }
    }

    fn build_system(
        &self,
        mass: f64,
        gamma: f64,
        spin: f64,
        omega: f64,
        offset: f64,
    ) -> Result<SpinSystem, CliError> {
        let mut sys = SpinSystem::new(mass, gamma, Spin::from_f64(spin)?, omega, offset)?;
        if let Some(l) = self.sample_half_length {
            sys = sys.with_sample_half_length(l)?;
        }
        Ok(sys)
    }

    /// Full system; `omega` in rad/s after unit conversion.
    pub fn system(&self, unit: OmegaUnit) -> Result<SpinSystem, CliError> {
        let omega = unit.to_angular(required("omega", self.omega)?);
        self.system_with_omega(omega)
    }

    /// System with an externally supplied `omega` (rad/s).
    pub fn system_with_omega(&self, omega: f64) -> Result<SpinSystem, CliError> {
        self.build_system(
            required("mass", self.mass)?,
            required("gamma", self.gamma)?,
            required("spin", self.spin)?,
            omega,
            self.offset.unwrap_or(0.0),
        )
    }

    pub fn field(&self) -> Result<FieldProfile, CliError> {
        Ok(FieldProfile::new(
            self.b0.unwrap_or(0.0),
            self.g.unwrap_or(0.0),
            self.gbar.unwrap_or(0.0),
        )?)
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }
}
