//! Randomized stable scenarios shared by the integration and acceptance
//! suites.
//!
//! Masses, frequencies and gyromagnetic ratios are drawn log-uniformly; the
//! curvature is set through the largest scaled spin number, and the gradient
//! and uniform field through bounded displacements and Zeeman shifts (in
//! oscillator units) so that no level sits near zero energy, where a
//! relative error would be meaningless.
#![allow(dead_code)]

use parabolic_mr::spectrum::critical_gbar;
use parabolic_mr::units::HBAR;
use parabolic_mr::{FieldProfile, Spin, SpinSystem};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SPINS_TWICE: [u32; 4] = [1, 2, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = rng.random_range(lo..hi);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub system: SpinSystem,
    pub field: FieldProfile,
    /// Largest |Mbar| over the sublevels.
    pub max_mbar: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct ScenarioShape {
    pub max_mbar: f64,
    /// |a| / lambda range.
    pub offset: (f64, f64),
    /// Largest sector displacement, units of lambda.
    pub displacement: f64,
    /// Largest |gamma B(a) S / Omega|; `None` forces `b0 = 0`.
    pub zeeman: Option<f64>,
    /// Allowed values of 2S.
    pub spins_twice: &'static [u32],
}

impl Default for ScenarioShape {
    fn default() -> Self {
        ScenarioShape {
            max_mbar: 0.9,
            offset: (0.15, 0.25),
            displacement: 0.1,
            zeeman: Some(0.1),
            spins_twice: &SPINS_TWICE,
        }
    }
}

pub fn random_scenario(rng: &mut ChaCha8Rng, shape: ScenarioShape) -> Scenario {
    let mass = log_uniform(rng, 1e-27, 1e-26);
    let omega = log_uniform(rng, 1e3, 1e6);
    let gamma = {
        let g = log_uniform(rng, 1e7, 2e11);
        if rng.random_bool(0.5) {
            g
        } else {
            -g
        }
    };
    let spin = Spin::from_twice(shape.spins_twice[rng.random_range(0..shape.spins_twice.len())]);
    let lambda = (HBAR / (mass * omega)).sqrt();
    let offset = signed(rng, shape.offset.0, shape.offset.1) * lambda;
    let system = SpinSystem::new(mass, gamma, spin, omega, offset).unwrap();

    let target = rng.random_range(0.0..shape.max_mbar);
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let gbar = sign * target * critical_gbar(&system);
    let mbar_of = |m: f64| 2.0 * gamma * gbar * HBAR * m / (omega * omega * mass);

    // gamma B'(a) lambda / Omega chosen so the largest displacement
    // M (...) / (1 - Mbar_M) equals the drawn value
    let reach = spin
        .levels()
        .map(|m| (m.value() / (1.0 - mbar_of(m.value()))).abs())
        .fold(0.0, f64::max);
    let displacement = rng.random_range(-shape.displacement..shape.displacement);
    let slope = displacement / reach * omega / (gamma * lambda);
    let g = slope - 2.0 * gbar * offset;

    let b0 = match shape.zeeman {
        Some(z) => {
            let z = rng.random_range(-z..z);
            let b_at_a = z * omega / (gamma * spin.value());
            b_at_a - g * offset - gbar * offset * offset
        }
        None => 0.0,
    };
    let field = FieldProfile::new(b0, g, gbar).unwrap();
    let max_mbar = spin
        .levels()
        .map(|m| mbar_of(m.value()).abs())
        .fold(0.0, f64::max);
    Scenario {
        system,
        field,
        max_mbar,
    }
}

pub fn scenarios(seed: u64, count: usize, shape: ScenarioShape) -> Vec<Scenario> {
    let mut r = rng(seed);
    (0..count).map(|_| random_scenario(&mut r, shape)).collect()
}

pub fn relative_error(got: f64, expected: f64) -> f64 {
    if got == expected {
        0.0
    } else {
        ((got - expected) / expected).abs()
    }
}
