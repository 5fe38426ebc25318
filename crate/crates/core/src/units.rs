//! Physical constants and the oscillator unit system.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Reduced Planck constant, J s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Electron gyromagnetic ratio, rad s^-1 T^-1. Negative: the electron
/// moment is antiparallel to its spin.
pub const ELECTRON_GAMMA: f64 = -1.760_859_63e11;

/// Electron rest mass, kg (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Proton gyromagnetic ratio, rad s^-1 T^-1 (CODATA 2018).
pub const PROTON_GAMMA: f64 = 2.675_221_874_4e8;

/// Proton rest mass, kg (CODATA 2018).
pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;

/// Named constants table.
pub const CONSTANTS: &[(&str, f64, &str)] = &[
    ("hbar", HBAR, "J s"),
    ("electron_gamma", ELECTRON_GAMMA, "rad s^-1 T^-1"),
    ("electron_mass", ELECTRON_MASS, "kg"),
    ("proton_gamma", PROTON_GAMMA, "rad s^-1 T^-1"),
    ("proton_mass", PROTON_MASS, "kg"),
];

/// Unit in which an oscillator frequency is given on input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmegaUnit {
    #[default]
    #[serde(rename = "rad/s")]
    RadPerSecond,
    #[serde(rename = "Hz")]
    Hertz,
}

impl OmegaUnit {
    /// Converts a value given in this unit to rad/s.
    pub fn to_angular(self, value: f64) -> f64 {
        match self {
            OmegaUnit::RadPerSecond => value,
            OmegaUnit::Hertz => 2.0 * PI * value,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rad/s" | "rad_per_s" => Some(OmegaUnit::RadPerSecond),
            "Hz" | "hz" => Some(OmegaUnit::Hertz),
            _ => None,
        }
    }
}

/// Natural units of an oscillator of mass `m` and angular frequency `omega`:
/// energy `hbar*omega` and length `sqrt(hbar/(m*omega))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorUnits {
    pub omega: f64,
    pub energy: f64,
    pub length: f64,
}

impl OscillatorUnits {
    pub fn new(mass: f64, omega: f64) -> Self {
        OscillatorUnits {
            omega,
            energy: HBAR * omega,
            length: (HBAR / (mass * omega)).sqrt(),
        }
    }
}
