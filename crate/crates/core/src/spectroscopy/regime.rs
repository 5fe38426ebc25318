use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::scaled_spin_number;
use crate::system::{FieldProfile, SpinLevelIndex, SpinSystem};
use crate::units::HBAR;

/// The two competing pieces of a level for `b0 = 0`, `a = 0`:
///
/// `E = quantum_weight * hbar Omega (n + 1/2) - classical_weight * E_cl`,
/// with `E_cl = m Omega^2 (G / Gbar)^2 / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimeWeights {
    /// `sqrt(1 - Mbar)`
    pub quantum_weight: f64,
    /// `Mbar^2 / (4 (1 - Mbar))`
    pub classical_weight: f64,
    /// `E_cl`, J.
    pub classical_energy_scale: f64,
    /// Classical part over quantum part for the queried `n`.
    pub ratio: f64,
}

pub fn regime_weights(
    sys: &SpinSystem,
    field: &FieldProfile,
    m: SpinLevelIndex,
    n: u32,
) -> Result<RegimeWeights> {
    sys.validate()?;
    field.validate()?;
    sys.check_level(m)?;
    if field.b0 != 0.0 {
        return Err(Error::RegimeUndefined("requires b0 = 0"));
    }
    if sys.offset != 0.0 {
        return Err(Error::RegimeUndefined("requires a = 0"));
    }
    if field.gbar == 0.0 {
        return Err(Error::RegimeUndefined("requires gbar != 0"));
    }
    let mbar = scaled_spin_number(sys, field, m)?;
    if mbar >= 1.0 {
        return Err(Error::Dissociation { m, mbar });
    }
    let quantum_weight = (1.0 - mbar).sqrt();
    let classical_weight = mbar * mbar / (4.0 * (1.0 - mbar));
    let ratio_g = field.g / field.gbar;
    let classical_energy_scale = 0.5 * sys.mass * sys.omega * sys.omega * ratio_g * ratio_g;
    let quantum_energy = HBAR * sys.omega * (n as f64 + 0.5);
    Ok(RegimeWeights {
        quantum_weight,
        classical_weight,
        classical_energy_scale,
        ratio: classical_weight * classical_energy_scale / (quantum_weight * quantum_energy),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{critical_gbar, energy_level};
    use crate::system::Spin;

    fn system() -> SpinSystem {
        SpinSystem::new(1e-26, 2e9, Spin::from_twice(2), 3e4, 0.0).unwrap()
    }

    #[test]
    fn zero_sector_is_purely_quantum() {
        let sys = system();
        let f = FieldProfile::new(0.0, 0.3, 0.2 * critical_gbar(&sys)).unwrap();
        let w = regime_weights(&sys, &f, SpinLevelIndex::ZERO, 2).unwrap();
        assert_eq!(w.quantum_weight, 1.0);
        assert_eq!(w.classical_weight, 0.0);
        assert_eq!(w.ratio, 0.0);
    }

    #[test]
    fn mbar_one_tenth() {
        let sys = system();
        let f = FieldProfile::new(0.0, 0.3, 0.1 * critical_gbar(&sys)).unwrap();
        let w = regime_weights(&sys, &f, SpinLevelIndex::from_twice(2), 0).unwrap();
        assert!((w.quantum_weight - 0.9f64.sqrt()).abs() < 1e-15);
        assert!((w.classical_weight - 0.01 / 3.6).abs() < 1e-17);
    }

    #[test]
    fn stiffened_sector_has_quantum_weight_above_one() {
        let sys = system();
        let f = FieldProfile::new(0.0, 0.3, 0.1 * critical_gbar(&sys)).unwrap();
        let w = regime_weights(&sys, &f, SpinLevelIndex::from_twice(-2), 0).unwrap();
        assert!((w.quantum_weight - 1.1f64.sqrt()).abs() < 1e-15);
        assert!(w.classical_weight > 0.0);
    }

    #[test]
    fn doubling_gradient_quadruples_ratio() {
        let sys = system();
        let gbar = 0.3 * critical_gbar(&sys);
        let m = SpinLevelIndex::from_twice(-2);
        let a = regime_weights(&sys, &FieldProfile::new(0.0, 0.3, gbar).unwrap(), m, 1).unwrap();
        let b = regime_weights(&sys, &FieldProfile::new(0.0, 0.6, gbar).unwrap(), m, 1).unwrap();
        assert_eq!(b.ratio, 4.0 * a.ratio);
    }

    #[test]
    fn weights_rebuild_the_level() {
        let sys = system();
        let f = FieldProfile::new(0.0, 0.3, -0.4 * critical_gbar(&sys)).unwrap();
        for m in sys.spin.levels() {
            let w = regime_weights(&sys, &f, m, 3).unwrap();
            let e = w.quantum_weight * HBAR * sys.omega * 3.5
                - w.classical_weight * w.classical_energy_scale;
            let exact = energy_level(&sys, &f, m, 3).unwrap();
            assert!(((e - exact) / exact).abs() < 1e-12);
        }
    }

    #[test]
    fn preconditions() {
        let sys = system();
        let m = SpinLevelIndex::from_twice(2);
        let err = |f: FieldProfile, s: &SpinSystem| regime_weights(s, &f, m, 0).unwrap_err();
        assert!(matches!(err(FieldProfile::new(0.1, 0.3, 1.0).unwrap(), &sys), Error::RegimeUndefined(_)));
        assert!(matches!(err(FieldProfile::new(0.0, 0.3, 0.0).unwrap(), &sys), Error::RegimeUndefined(_)));
        let shifted = SpinSystem::new(1e-26, 2e9, Spin::from_twice(2), 3e4, 1e-8).unwrap();
        assert!(matches!(err(FieldProfile::new(0.0, 0.3, 1.0).unwrap(), &shifted), Error::RegimeUndefined(_)));
        let crit = critical_gbar(&sys);
        assert!(matches!(err(FieldProfile::new(0.0, 0.3, crit).unwrap(), &sys), Error::Dissociation { .. }));
    }
}
