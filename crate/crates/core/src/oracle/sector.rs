//! Finite-difference discretization of one spin sector and the refinement
//! loop that turns it into converged eigenvalues.
//!
//! Positions are `u = (x - a) / lambda` with `lambda = sqrt(hbar / (m Omega))`
//! and energies are in units of `hbar Omega`. The sector potential relative
//! to its value at `x = a` is
//!
//! ```text
//! V(u) = u^2 / 2 - (gamma M / Omega) (B'(a) lambda u + Gbar lambda^2 u^2)
//! ```
//!
//! and the constant `-(gamma M / Omega) B(a)` is carried separately as
//! `energy_shift`. Nothing here uses the closed-form spectrum.

use serde::{Deserialize, Serialize};

use super::tridiagonal::{Eigenpair, SymTridiagonal};
use crate::error::{Error, Result};
use crate::system::{FieldProfile, SpinLevelIndex, SpinSystem};
use crate::units::OscillatorUnits;

pub const MIN_GRID_POINTS: usize = 64;
/// Refinement stops before the interior grid exceeds this many points.
pub const MAX_GRID_POINTS: usize = 1 << 18;
/// Highest Richardson order used (error `O(du^{2 (ORDER + 1)})`).
const RICHARDSON_ORDER: usize = 4;
/// Starting spacing in units of the sector's own oscillator length.
const INITIAL_SPACING: f64 = 0.16;
/// Walls sit this many sector lengths beyond the outermost turning point.
const WALL_MARGIN: f64 = 10.0;

/// Uniform grid with Dirichlet walls at `u_min` and `u_max`; `n_points`
/// interior nodes `u_i = u_min + (i + 1) du`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    /// Physical position of `u = 0` (the potential-minimum offset `a`), m.
    pub origin: f64,
    /// Physical length of one unit of `u`, m.
    pub length_unit: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn new(origin: f64, length_unit: f64, u_min: f64, u_max: f64, n_points: usize) -> Result<Self> {
        let g = Grid {
            origin,
            length_unit,
            u_min,
            u_max,
            n_points,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.u_min < self.u_max) || !self.u_min.is_finite() || !self.u_max.is_finite() {
            return Err(Error::GridTooCoarse(format!(
                "empty domain [{}, {}]",
                self.u_min, self.u_max
            )));
        }
        if self.n_points < MIN_GRID_POINTS {
            return Err(Error::GridTooCoarse(format!(
                "{} points, need at least {MIN_GRID_POINTS}",
                self.n_points
            )));
        }
        if !(self.length_unit > 0.0) {
            return Err(Error::GridTooCoarse("nonpositive length unit".into()));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.u_max - self.u_min) / (self.n_points + 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.u_min + (i + 1) as f64 * self.spacing()
    }

    /// Same walls, spacing halved.
    pub fn refined(&self) -> Self {
        Grid {
            n_points: 2 * self.n_points + 1,
            ..*self
        }
    }
}

/// Discretized `H_M / (hbar Omega)`: the eigenvalues of `matrix` plus
/// `energy_shift` are the sector energies. `potential` holds the sampled
/// potential on its own so the kinetic and potential parts can be summed
/// without losing the potential's low bits to the `1/du^2` diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorMatrix {
    pub matrix: SymTridiagonal,
    pub potential: Vec<f64>,
    pub energy_shift: f64,
    pub m: SpinLevelIndex,
    pub grid: Grid,
}

impl SectorMatrix {
    pub fn diagonal(&self) -> &[f64] {
        &self.matrix.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.matrix.off_diagonal
    }

    /// `<psi|H|psi> / <psi|psi>` with the kinetic term written as squared
    /// neighbour differences (walls included). Stationary in the error of
    /// `psi`, and free of the `eps / du^2` roundoff of the assembled matrix.
    pub fn rayleigh_quotient(&self, psi: &[f64]) -> f64 {
        let du = self.grid.spacing();
        let mut kinetic = psi[0] * psi[0] + psi[psi.len() - 1] * psi[psi.len() - 1];
        kinetic += psi.windows(2).map(|w| (w[1] - w[0]) * (w[1] - w[0])).sum::<f64>();
        let potential: f64 = psi.iter().zip(&self.potential).map(|(p, v)| v * p * p).sum();
        let norm: f64 = psi.iter().map(|p| p * p).sum();
        (0.5 * kinetic / (du * du) + potential) / norm
    }
}

/// Quadratic sector potential `c2 u^2 + c1 u` (relative to `x = a`) plus the
/// constant `c0`, all in units of `hbar Omega`.
#[derive(Clone, Copy, Debug)]
struct SectorPotential {
    c0: f64,
    c1: f64,
    c2: f64,
}

impl SectorPotential {
    fn new(sys: &SpinSystem, field: &FieldProfile, m: SpinLevelIndex, units: &OscillatorUnits) -> Self {
        let coupling = sys.gamma * m.value() / sys.omega;
        let a = sys.offset;
        let lambda = units.length;
        SectorPotential {
            c0: -coupling * field.value_at(a),
            c1: -coupling * field.gradient_at(a) * lambda,
            c2: 0.5 - coupling * field.gbar * lambda * lambda,
        }
    }

    fn eval(&self, u: f64) -> f64 {
        u * (self.c1 + self.c2 * u)
    }
}

pub fn build_sector_hamiltonian(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
    grid: &Grid,
) -> Result<SectorMatrix> {
    sys.validate()?;
    field.validate()?;
    sys.check_level(m)?;
    grid.validate()?;
    let units = sys.units();
    let potential = SectorPotential::new(sys, field, m, &units);
    let du = grid.spacing();
    let kinetic = 1.0 / (du * du);
    let sampled: Vec<f64> = (0..grid.n_points)
        .map(|i| potential.eval(grid.point(i)))
        .collect();
    let diagonal = sampled.iter().map(|v| kinetic + v).collect();
    let off_diagonal = vec![-0.5 * kinetic; grid.n_points - 1];
    Ok(SectorMatrix {
        matrix: SymTridiagonal {
            diagonal,
            off_diagonal,
        },
        potential: sampled,
        energy_shift: potential.c0,
        m,
        grid: *grid,
    })
}

/// The `k` lowest eigenpairs in units of `hbar Omega` (shift included),
/// with vectors normalized so that `sum psi_i^2 du = 1`. Bisection brackets
/// each eigenvalue to `tol`; the returned value is the Rayleigh quotient of
/// the inverse-iteration vector.
pub fn lowest_eigenpairs(mat: &SectorMatrix, k: usize, tol: f64) -> Result<Vec<Eigenpair>> {
    let scale = mat.grid.spacing().sqrt();
    let mut pairs = mat.matrix.lowest_eigenpairs(k, tol)?;
    for p in &mut pairs {
        p.value = mat.rayleigh_quotient(&p.vector) + mat.energy_shift;
        p.vector.iter_mut().for_each(|v| *v /= scale);
    }
    Ok(pairs)
}

/// `<x> = a + lambda sum u_i psi_i^2 du` for a quadrature-normalized vector.
pub fn expectation_position(vector: &[f64], grid: &Grid) -> f64 {
    let du = grid.spacing();
    let mean_u: f64 = vector
        .iter()
        .enumerate()
        .map(|(i, v)| grid.point(i) * v * v)
        .sum::<f64>()
        * du;
    grid.origin + grid.length_unit * mean_u
}

/// One grid level of a refinement run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub n_points: usize,
    pub spacing: f64,
    /// Raw finite-difference eigenvalues, units of `hbar Omega`.
    pub eigenvalues: Vec<f64>,
    /// Richardson-extrapolated eigenvalues at this level.
    pub extrapolated: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorReport {
    pub m: SpinLevelIndex,
    pub grid: Grid,
    pub refinements: Vec<Refinement>,
    /// `log2` of the ratio of successive raw eigenvalue changes, per level;
    /// close to 2 for the 3-point Laplacian.
    pub observed_order: Vec<f64>,
    /// Raw eigenvalues increased monotonically under every refinement.
    pub monotone: bool,
    pub converged: bool,
}

/// Everything a converged sector solve produces.
#[derive(Clone, Debug)]
pub struct SectorSolution {
    /// Units of `hbar Omega`.
    pub reduced: Vec<f64>,
    /// J
    pub energies: Vec<f64>,
    pub report: SectorReport,
    /// Eigenvectors on the finest grid (`report.grid`), quadrature-normalized.
    pub vectors: Vec<Vec<f64>>,
}

/// Sector grid from the potential's own curvature and vertex.
fn initial_grid(
    sys: &SpinSystem,
    potential: &SectorPotential,
    units: &OscillatorUnits,
    m: SpinLevelIndex,
    k: usize,
) -> Result<(Grid, f64)> {
    if !(potential.c2 > 0.0) {
        return Err(Error::UnboundedBelow { m });
    }
    // sector length in units of lambda: (2 c2)^{-1/4}
    let sector_length = (2.0 * potential.c2).powf(-0.25);
    let vertex = -potential.c1 / (2.0 * potential.c2);
    let half_width = ((2 * k + 1) as f64).sqrt() * sector_length + WALL_MARGIN * sector_length;
    let u_min = (vertex - half_width).floor();
    let u_max = (vertex + half_width).ceil();
    let spacing = INITIAL_SPACING * sector_length;
    let n_points = (((u_max - u_min) / spacing).ceil() as usize).max(MIN_GRID_POINTS + 1) - 1;
    let grid = Grid::new(sys.offset, units.length, u_min, u_max, n_points)?;
    Ok((grid, sector_length))
}

/// Refines the grid by halving the spacing until the Richardson-extrapolated
/// eigenvalues change by less than `0.1 * tol` relative between levels.
pub fn solve_sector(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
    k: usize,
    tol: f64,
) -> Result<SectorSolution> {
    sys.validate()?;
    field.validate()?;
    sys.check_level(m)?;
    if k == 0 {
        return Err(Error::invalid_argument("k", "must be at least 1"));
    }
    if !(tol >= 1e-12) {
        return Err(Error::invalid_argument("tol", format!("must be >= 1e-12, got {tol}")));
    }
    let units = sys.units();
    let potential = SectorPotential::new(sys, field, m, &units);
    let (mut grid, sector_length) = initial_grid(sys, &potential, &units, m, k)?;
    // energy floor for relative comparisons: half a sector quantum
    let floor = 0.5 / (sector_length * sector_length);

    let mut table: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut refinements: Vec<Refinement> = Vec::new();
    let mut vectors = Vec::new();
    let mut converged = false;
    while grid.n_points <= MAX_GRID_POINTS {
        let mat = build_sector_hamiltonian(sys, field, m, &grid)?;
        // bisect the raw matrix to the floating-point limit
        let pairs = lowest_eigenpairs(&mat, k, f64::MIN_POSITIVE)?;
        let raw: Vec<f64> = pairs.iter().map(|p| p.value - mat.energy_shift).collect();
        vectors = pairs.into_iter().map(|p| p.vector).collect();

        let mut row = vec![raw.clone()];
        let j = table.len();
        for order in 1..=RICHARDSON_ORDER.min(j) {
            let factor = 4f64.powi(order as i32) - 1.0;
            let prev = &table[j - 1][order - 1];
            let cur = &row[order - 1];
            let next = cur
                .iter()
                .zip(prev)
                .map(|(c, p)| c + (c - p) / factor)
                .collect();
            row.push(next);
        }
        let extrapolated = row.last().cloned().unwrap_or_default();
        if let Some(last) = refinements.last() {
            if j >= 2 {
                converged = extrapolated.iter().zip(&last.extrapolated).all(|(e, p)| {
                    let e = e + potential.c0;
                    (e - p).abs() < 0.1 * tol * e.abs().max(floor)
                });
            }
        }
        refinements.push(Refinement {
            n_points: grid.n_points,
            spacing: grid.spacing(),
            eigenvalues: raw.iter().map(|v| v + potential.c0).collect(),
            extrapolated: extrapolated.iter().map(|v| v + potential.c0).collect(),
        });
        table.push(row);
        if converged {
            break;
        }
        grid = grid.refined();
    }
    if !converged {
        return Err(Error::OracleNotConverged {
            m,
            refinements: refinements.len(),
        });
    }

    let observed_order = if table.len() >= 3 {
        let t = table.len();
        (0..k)
            .map(|i| {
                let d1 = table[t - 2][0][i] - table[t - 3][0][i];
                let d2 = table[t - 1][0][i] - table[t - 2][0][i];
                (d1 / d2).abs().log2()
            })
            .collect()
    } else {
        vec![f64::NAN; k]
    };
    let monotone = table
        .windows(2)
        .all(|w| w[1][0].iter().zip(&w[0][0]).all(|(b, a)| b >= a));
    let reduced = refinements.last().map(|r| r.extrapolated.clone()).unwrap_or_default();
    Ok(SectorSolution {
        energies: reduced.iter().map(|e| e * units.energy).collect(),
        reduced,
        report: SectorReport {
            m,
            grid,
            refinements,
            observed_order,
            monotone,
            converged,
        },
        vectors,
    })
}

/// Converged lowest `k` sector energies in J.
pub fn converged_spectrum(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
    k: usize,
    tol: f64,
) -> Result<(Vec<f64>, SectorReport)> {
    let sol = solve_sector(sys, field, m, k, tol)?;
    Ok((sol.energies, sol.report))
}
