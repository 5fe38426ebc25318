//! Closed-form spectrum of the spin-S oscillator in a parabolic field.
//!
//! For a fixed spin projection `M` the Hamiltonian is a shifted oscillator
//!
//! ```text
//! H_M = p^2/2m + m Omega^2 (x - a)^2 / 2 - gamma hbar M (B0 + G x + Gbar x^2)
//! ```
//!
//! whose quadratic coefficient is softened by the field: the sector frequency
//! is `Omega_M = Omega sqrt(1 - Mbar)` with `Mbar = 2 gamma Gbar hbar M / (m Omega^2)`.
//! Completing the square gives
//!
//! ```text
//! E_{M,n} = hbar Omega_M (n + 1/2) - gamma B(a) hbar M
//!           - gamma^2 B'(a)^2 hbar^2 M^2 / (2 m Omega_M^2)
//! ```
//!
//! with the eigenfunction centred at `a + gamma B'(a) hbar M / (m Omega_M^2)`.
//! A sector with `Mbar >= 1` has no bound states and every operation on it
//! returns [`Error::Dissociation`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oscillator::oscillator_wavefunction;
use crate::system::{FieldProfile, LevelLabel, SpinLevelIndex, SpinSystem};
use crate::units::{OscillatorUnits, HBAR};

/// Per-sector quantities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub m: SpinLevelIndex,
    pub mbar: f64,
    /// `None` when the sector is dissociated.
    pub omega_eff: Option<f64>,
    /// `None` when the sector is dissociated.
    pub center: Option<f64>,
    pub gbar_crit: f64,
    pub stable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// `m Omega^2 / (2 |gamma| hbar S)`; infinite when `S = 0` or `gamma = 0`.
    pub gbar_crit: f64,
    pub stable: bool,
    /// Sublevel closest to dissociation; `None` when `gamma * Gbar = 0`.
    pub worst_m: Option<SpinLevelIndex>,
    /// Largest `Mbar` over all sublevels.
    pub max_mbar: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub m: SpinLevelIndex,
    pub n: u32,
    /// J
    pub energy: f64,
}

impl EnergyLevel {
    pub fn label(&self) -> LevelLabel {
        LevelLabel::new(self.m, self.n)
    }
}

/// Energy split into the rescaled quantum-oscillator term and the three
/// classical-oscillator terms (valid for `b0 = 0`, `gbar != 0`). All in J.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyDecomposition {
    /// `hbar Omega (n + 1/2) sqrt(1 - Mbar)`
    pub quantum_term: f64,
    /// `-(m Omega^2 (G/Gbar)^2 / 2) Mbar^2 / (4 (1 - Mbar))`
    pub classical_g_term: f64,
    /// `-(m Omega^2 a^2 / 2) Mbar / (1 - Mbar)`
    pub classical_a_term: f64,
    /// `-(m Omega^2 (G/Gbar) a / 2) Mbar / (1 - Mbar)`
    pub classical_mixed_term: f64,
    pub total: f64,
}

/// Dimensionless description of one stable sector.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Sector {
    pub units: OscillatorUnits,
    pub mbar: f64,
    /// `sqrt(1 - Mbar)`
    pub root: f64,
    /// `gamma B(a) M / Omega`
    pub zeeman: f64,
    /// `gamma B'(a) lambda M / Omega`, the linear force in oscillator units.
    pub drive: f64,
}

impl Sector {
    pub fn new(sys: &SpinSystem, field: &FieldProfile, m: SpinLevelIndex) -> Result<Self> {
        let mbar = scaled_spin_number(sys, field, m)?;
        if mbar >= 1.0 {
            return Err(Error::Dissociation { m, mbar });
        }
        let units = sys.units();
        let scale = sys.gamma * m.value() / sys.omega;
        Ok(Sector {
            units,
            mbar,
            root: (1.0 - mbar).sqrt(),
            zeeman: scale * field.value_at(sys.offset),
            drive: scale * field.gradient_at(sys.offset) * units.length,
        })
    }

    /// `E / (hbar Omega)`
    pub fn reduced_energy(&self, n: u32) -> f64 {
        self.root * (n as f64 + 0.5) - self.zeeman - self.shift_energy()
    }

    /// Energy released by the displacement, `drive^2 / (2 (1 - Mbar))`.
    pub fn shift_energy(&self) -> f64 {
        self.drive * self.drive / (2.0 * (1.0 - self.mbar))
    }

    /// Displacement of the eigenfunction centre from `a`, in units of lambda.
    pub fn reduced_shift(&self) -> f64 {
        self.drive / (1.0 - self.mbar)
    }
}

fn validate(sys: &SpinSystem, field: &FieldProfile, m: SpinLevelIndex) -> Result<()> {
    sys.validate()?;
    field.validate()?;
    sys.check_level(m)
}

/// `Gbar` at which the outermost sublevel reaches `Mbar = 1`.
pub fn critical_gbar(sys: &SpinSystem) -> f64 {
    let s = sys.spin.value();
    if s == 0.0 || sys.gamma == 0.0 {
        return f64::INFINITY;
    }
    sys.mass * sys.omega * sys.omega / (2.0 * sys.gamma.abs() * HBAR * s)
}

/// Scaled spin number `Mbar = 2 gamma Gbar hbar M / (Omega^2 m)`.
///
/// Evaluated as `sign(gamma) (Gbar / Gbar_crit) (M / S)` so that the boundary
/// `Gbar = Gbar_crit, M = S` gives exactly one.
pub fn scaled_spin_number(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
) -> Result<f64> {
    validate(sys, field, m)?;
    if m.twice() == 0 || field.gbar == 0.0 || sys.gamma == 0.0 {
        return Ok(0.0);
    }
    let ratio = m.twice() as f64 / sys.spin.twice() as f64;
    Ok(sys.gamma.signum() * (field.gbar / critical_gbar(sys)) * ratio)
}

/// `Omega_M = Omega sqrt(1 - Mbar)`.
pub fn effective_frequency(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
) -> Result<f64> {
    let sector = Sector::new(sys, field, m)?;
    Ok(sys.omega * sector.root)
}

pub fn stability_check(sys: &SpinSystem, field: &FieldProfile) -> Result<StabilityReport> {
    sys.validate()?;
    field.validate()?;
    let gbar_crit = critical_gbar(sys);
    let product = sys.gamma * field.gbar;
    if sys.spin.twice() == 0 || product == 0.0 {
        return Ok(StabilityReport {
            gbar_crit,
            stable: true,
            worst_m: None,
            max_mbar: 0.0,
        });
    }
    let top = SpinLevelIndex::from_twice(sys.spin.twice() as i32);
    let worst = if product > 0.0 { top } else { top.negated() };
    let max_mbar = scaled_spin_number(sys, field, worst)?;
    Ok(StabilityReport {
        gbar_crit,
        stable: max_mbar < 1.0,
        worst_m: Some(worst),
        max_mbar,
    })
}

pub fn derived_params(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
) -> Result<DerivedParams> {
    let mbar = scaled_spin_number(sys, field, m)?;
    let gbar_crit = critical_gbar(sys);
    let (omega_eff, center) = match Sector::new(sys, field, m) {
        Ok(sector) => (
            Some(sys.omega * sector.root),
            Some(sys.offset + sector.units.length * sector.reduced_shift()),
        ),
        Err(Error::Dissociation { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(DerivedParams {
        m,
        mbar,
        omega_eff,
        center,
        gbar_crit,
        stable: mbar < 1.0,
    })
}

/// `E_{M,n}` in J.
pub fn energy_level(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
    n: u32,
) -> Result<f64> {
    let sector = Sector::new(sys, field, m)?;
    Ok(sector.reduced_energy(n) * sector.units.energy)
}

/// All levels with `n <= n_max`, ordered by `(M, n)`.
pub fn spectrum(sys: &SpinSystem, field: &FieldProfile, n_max: u32) -> Result<Vec<EnergyLevel>> {
    let mut levels = Vec::with_capacity(sys.spin.multiplicity() * (n_max as usize + 1));
    for m in sys.spin.levels() {
        let sector = Sector::new(sys, field, m)?;
        for n in 0..=n_max {
            levels.push(EnergyLevel {
                m,
                n,
                energy: sector.reduced_energy(n) * sector.units.energy,
            });
        }
    }
    Ok(levels)
}

/// `(E_to - E_from) / hbar` in rad/s, evaluated term by term so that no
/// large common part is subtracted. With `G = Gbar = 0` the result does not
/// depend on `Omega` at all, bit for bit, when `n_from == n_to`.
pub fn transition_angular_frequency(
    sys: &SpinSystem,
    field: &FieldProfile,
    from: LevelLabel,
    to: LevelLabel,
) -> Result<f64> {
    let a = Sector::new(sys, field, from.m)?;
    let b = Sector::new(sys, field, to.m)?;
    let dn = to.n as f64 - from.n as f64;
    let quantum = if from.m == to.m {
        dn * a.root
    } else {
        // sqrt(1 - Mbar_b) - sqrt(1 - Mbar_a) without cancellation
        let droot = (a.mbar - b.mbar) / (a.root + b.root);
        (to.n as f64 + 0.5) * droot + dn * a.root
    };
    let dm = to.m.value() - from.m.value();
    let zeeman = -sys.gamma * field.value_at(sys.offset) * dm;
    let gradient = sys.gamma * field.gradient_at(sys.offset);
    let (ma, mb) = (from.m.value(), to.m.value());
    let shift = -(gradient * gradient * HBAR / (2.0 * sys.mass * sys.omega * sys.omega))
        * (mb * mb / (1.0 - b.mbar) - ma * ma / (1.0 - a.mbar));
    Ok(sys.omega * quantum + zeeman + shift)
}

/// Four-term split of the energy for `b0 = 0`, `gbar != 0`.
pub fn energy_decomposition(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
    n: u32,
) -> Result<EnergyDecomposition> {
    validate(sys, field, m)?;
    if field.b0 != 0.0 {
        return Err(Error::DecompositionUndefined("requires b0 = 0"));
    }
    if field.gbar == 0.0 {
        return Err(Error::DecompositionUndefined("requires gbar != 0"));
    }
    let mbar = scaled_spin_number(sys, field, m)?;
    if mbar >= 1.0 {
        return Err(Error::Dissociation { m, mbar });
    }
    let stiffness = 0.5 * sys.mass * sys.omega * sys.omega;
    let a = sys.offset;
    let weight = mbar / (1.0 - mbar);
    // (G/Gbar) Mbar stays finite as Gbar -> 0
    let ratio_mbar = field.g / field.gbar * mbar;

    let quantum_term = HBAR * sys.omega * (n as f64 + 0.5) * (1.0 - mbar).sqrt();
    let classical_mixed_term = -stiffness * a * ratio_mbar / (1.0 - mbar);
    let classical_a_term = -stiffness * a * a * weight;
    let classical_g_term = -stiffness * ratio_mbar * ratio_mbar / (4.0 * (1.0 - mbar));
    Ok(EnergyDecomposition {
        quantum_term,
        classical_g_term,
        classical_a_term,
        classical_mixed_term,
        total: quantum_term + classical_mixed_term + classical_a_term + classical_g_term,
    })
}

/// Centre of the sector eigenfunctions, `a + gamma B'(a) hbar M / (m Omega_M^2)`.
pub fn eigenfunction_center(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
) -> Result<f64> {
    let sector = Sector::new(sys, field, m)?;
    Ok(sys.offset + sector.units.length * sector.reduced_shift())
}

/// `phi_{M,n}(x) = Psi_n(Omega_M; x - x_c)` in m^{-1/2}.
pub fn eigenfunction(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
    n: u32,
    x: f64,
) -> Result<f64> {
    let sector = Sector::new(sys, field, m)?;
    let center = sys.offset + sector.units.length * sector.reduced_shift();
    oscillator_wavefunction(n, sys.omega * sector.root, sys.mass, x - center)
}
