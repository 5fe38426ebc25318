//! Particle and field parameters.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::units::OscillatorUnits;

/// Spin quantum number `S`, stored as `2S` so half-integers are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub const fn from_twice(twice: u32) -> Self {
        Spin { twice }
    }

    /// Accepts `0, 0.5, 1, 1.5, ...`.
    pub fn from_f64(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        if !value.is_finite() || value < 0.0 || twice.fract() != 0.0 || twice > 1.0e6 {
            return Err(Error::InvalidSystem {
                name: "spin",
                reason: format!("{value} is not a nonnegative half-integer"),
            });
        }
        Ok(Spin {
            twice: twice as u32,
        })
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        0.5 * self.twice as f64
    }

    /// Number of spin sublevels, `2S + 1`.
    pub fn multiplicity(self) -> usize {
        self.twice as usize + 1
    }

    /// Sublevels `M = -S, -S+1, ..., S` in ascending order.
    pub fn levels(self) -> impl DoubleEndedIterator<Item = SpinLevelIndex> + Clone {
        let s = self.twice as i32;
        (0..=self.twice as i32).map(move |k| SpinLevelIndex::from_twice(-s + 2 * k))
    }

    pub fn contains(self, m: SpinLevelIndex) -> bool {
        let s = self.twice as i32;
        m.twice.abs() <= s && (s - m.twice) % 2 == 0
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Spin {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for Spin {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Spin::from_f64(v).map_err(serde::de::Error::custom)
    }
}

/// Spin projection `M`, stored as `2M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinLevelIndex {
    twice: i32,
}

impl SpinLevelIndex {
    pub const ZERO: SpinLevelIndex = SpinLevelIndex { twice: 0 };

    pub const fn from_twice(twice: i32) -> Self {
        SpinLevelIndex { twice }
    }

    pub fn from_f64(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        if !value.is_finite() || twice.fract() != 0.0 || twice.abs() > 1.0e6 {
            return Err(Error::invalid_argument(
                "M",
                format!("{value} is not a half-integer"),
            ));
        }
        Ok(SpinLevelIndex {
            twice: twice as i32,
        })
    }

    pub fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        0.5 * self.twice as f64
    }

    /// The next sublevel up, `M + 1`.
    pub fn raised(self) -> Self {
        SpinLevelIndex {
            twice: self.twice + 2,
        }
    }

    pub fn negated(self) -> Self {
        SpinLevelIndex { twice: -self.twice }
    }
}

impl fmt::Display for SpinLevelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for SpinLevelIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for SpinLevelIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        SpinLevelIndex::from_f64(v).map_err(serde::de::Error::custom)
    }
}

/// A labeled level `(M, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelLabel {
    pub m: SpinLevelIndex,
    pub n: u32,
}

impl LevelLabel {
    pub fn new(m: SpinLevelIndex, n: u32) -> Self {
        LevelLabel { m, n }
    }
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(M={}, n={})", self.m, self.n)
    }
}

/// Particle parameters. Fields are public so sweeps can vary them; every
/// operation re-checks [`SpinSystem::validate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinSystem {
    /// kg
    pub mass: f64,
    /// Signed gyromagnetic ratio, rad s^-1 T^-1.
    pub gamma: f64,
    pub spin: Spin,
    /// Oscillator angular frequency, rad/s.
    pub omega: f64,
    /// Position `a` of the potential minimum, m.
    pub offset: f64,
    /// Sample half-length `l`, m. Only constrains `offset`.
    pub sample_half_length: Option<f64>,
}

impl SpinSystem {
    pub fn new(mass: f64, gamma: f64, spin: Spin, omega: f64, offset: f64) -> Result<Self> {
        let sys = SpinSystem {
            mass,
            gamma,
            spin,
            omega,
            offset,
            sample_half_length: None,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn with_sample_half_length(mut self, half_length: f64) -> Result<Self> {
        self.sample_half_length = Some(half_length);
        self.validate()?;
        Ok(self)
    }

    pub fn with_omega(&self, omega: f64) -> Self {
        SpinSystem {
            omega,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: String| Err(Error::InvalidSystem { name, reason });
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return bad("mass", format!("must be positive and finite, got {}", self.mass));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return bad("omega", format!("must be positive and finite, got {}", self.omega));
        }
        if !self.gamma.is_finite() {
            return bad("gamma", format!("must be finite, got {}", self.gamma));
        }
        if !self.offset.is_finite() {
            return bad("offset", format!("must be finite, got {}", self.offset));
        }
        if let Some(l) = self.sample_half_length {
            if !(l.is_finite() && l > 0.0) {
                return bad("sample_half_length", format!("must be positive, got {l}"));
            }
            if self.offset.abs() >= l {
                return bad(
                    "offset",
                    format!("|a| = {} must lie inside (-l, l) with l = {l}", self.offset.abs()),
                );
            }
        }
        Ok(())
    }

    pub fn check_level(&self, m: SpinLevelIndex) -> Result<()> {
        if self.spin.contains(m) {
            Ok(())
        } else {
            Err(Error::invalid_argument(
                "M",
                format!("{m} is not a sublevel of spin {}", self.spin),
            ))
        }
    }

    pub fn units(&self) -> OscillatorUnits {
        OscillatorUnits::new(self.mass, self.omega)
    }
}

/// Field coefficients of `B(x) = b0 + g x + gbar x^2` (T, T/m, T/m^2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FieldProfile {
    pub b0: f64,
    pub g: f64,
    pub gbar: f64,
}

impl FieldProfile {
    pub fn new(b0: f64, g: f64, gbar: f64) -> Result<Self> {
        let f = FieldProfile { b0, g, gbar };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("b0", self.b0), ("g", self.g), ("gbar", self.gbar)] {
            if !v.is_finite() {
                return Err(Error::InvalidSystem {
                    name,
                    reason: format!("must be finite, got {v}"),
                });
            }
        }
        Ok(())
    }

    pub fn with_gbar(self, gbar: f64) -> Self {
        FieldProfile { gbar, ..self }
    }

    pub fn value_at(&self, x: f64) -> f64 {
        self.b0 + x * (self.g + self.gbar * x)
    }

    pub fn gradient_at(&self, x: f64) -> f64 {
        self.g + 2.0 * self.gbar * x
    }

    /// No gradient terms: only a uniform `b0`.
    pub fn is_homogeneous(&self) -> bool {
        self.g == 0.0 && self.gbar == 0.0
    }
}
