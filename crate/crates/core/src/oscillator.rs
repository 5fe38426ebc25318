//! Harmonic-oscillator eigenbasis: Hermite polynomials and normalized
//! wavefunctions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::units::HBAR;

/// Highest Hermite order accepted by [`hermite`].
pub const MAX_HERMITE_ORDER: u32 = 200;

/// Physicists' Hermite polynomial `H_n(xi)` by upward recurrence
/// `H_{k+1} = 2 xi H_k - 2k H_{k-1}`.
pub fn hermite(n: u32, xi: f64) -> Result<f64> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_HERMITE_ORDER,
        });
    }
    if !xi.is_finite() {
        return Err(Error::invalid_argument("xi", "must be finite"));
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * xi * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalized Hermite function `psi_n(xi)` in dimensionless units, i.e.
/// `(2^n n! sqrt(pi))^{-1/2} H_n(xi) exp(-xi^2/2)`.
///
/// Evaluated with the normalized recurrence so no factorial appears.
pub fn hermite_function(n: u32, xi: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * xi * xi).exp();
    for k in 0..n {
        let k = k as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * xi * cur - (k / (k + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Psi_n(Omega; x)`, unit-normalized in SI (amplitude in m^{-1/2}).
pub fn oscillator_wavefunction(n: u32, omega: f64, mass: f64, x: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidSystem {
            name: "omega",
            reason: format!("must be positive, got {omega}"),
        });
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::InvalidSystem {
            name: "mass",
            reason: format!("must be positive, got {mass}"),
        });
    }
    let length = (HBAR / (mass * omega)).sqrt();
    Ok(hermite_function(n, x / length) / length.sqrt())
}
