//! Closed-form spectrum versus the finite-difference oracle.

use serde::{Deserialize, Serialize};

use super::sector::{expectation_position, solve_sector, SectorReport};
use crate::error::Result;
use crate::spectrum;
use crate::system::{FieldProfile, SpinLevelIndex, SpinSystem};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelComparison {
    pub m: SpinLevelIndex,
    pub n: u32,
    pub analytic_j: f64,
    pub numeric_j: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterComparison {
    pub m: SpinLevelIndex,
    pub analytic_m: f64,
    pub numeric_m: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorValidation {
    pub levels: Vec<LevelComparison>,
    pub center: CenterComparison,
    pub report: SectorReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub levels: Vec<LevelComparison>,
    pub centers: Vec<CenterComparison>,
    pub sectors: Vec<SectorReport>,
    pub max_relative_error: f64,
    /// Every sector's refinement met `0.1 * tolerance`.
    pub converged: bool,
    /// Converged and every level within `tolerance`.
    pub passed: bool,
}

fn relative(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

/// Solves one sector with the oracle and compares its lowest `k` levels and
/// its ground-state centroid with the closed forms.
pub fn validate_sector(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
    k: usize,
    tol: f64,
) -> Result<SectorValidation> {
    let solution = solve_sector(sys, field, m, k, tol)?;
    let mut levels = Vec::with_capacity(k);
    for (n, &numeric) in solution.energies.iter().enumerate() {
        let analytic = spectrum::energy_level(sys, field, m, n as u32)?;
        levels.push(LevelComparison {
            m,
            n: n as u32,
            analytic_j: analytic,
            numeric_j: numeric,
            relative_error: relative(numeric, analytic),
        });
    }
    let analytic_center = spectrum::eigenfunction_center(sys, field, m)?;
    let numeric_center = expectation_position(&solution.vectors[0], &solution.report.grid);
    Ok(SectorValidation {
        levels,
        center: CenterComparison {
            m,
            analytic_m: analytic_center,
            numeric_m: numeric_center,
            relative_error: relative(numeric_center, analytic_center),
        },
        report: solution.report,
    })
}

impl ValidationReport {
    pub fn assemble(parts: Vec<SectorValidation>, tolerance: f64) -> Self {
        let mut levels = Vec::new();
        let mut centers = Vec::new();
        let mut sectors = Vec::new();
        for p in parts {
            levels.extend(p.levels);
            centers.push(p.center);
            sectors.push(p.report);
        }
        let max_relative_error = levels
            .iter()
            .map(|l| l.relative_error)
            .fold(0.0, f64::max);
        let converged = sectors.iter().all(|s| s.converged);
        ValidationReport {
            tolerance,
            passed: converged && max_relative_error < tolerance,
            levels,
            centers,
            sectors,
            max_relative_error,
            converged,
        }
    }
}

/// Validates the lowest `k` levels of every sector.
pub fn validate(
    sys: &SpinSystem,
    field: &FieldProfile,
    k: usize,
    tol: f64,
) -> Result<ValidationReport> {
    let parts = sys
        .spin
        .levels()
        .map(|m| validate_sector(sys, field, m, k, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport::assemble(parts, tol))
}
