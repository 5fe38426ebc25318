//! Exact spectrum of a spin-S harmonic oscillator in a parabolic magnetic
//! field `B(x) = B0 + G x + Gbar x^2` along z.
//!
//! The Hamiltonian separates into `2S + 1` spin sectors; each sector is a
//! shifted oscillator with effective frequency `Omega * sqrt(1 - Mbar)`.
//! The crate provides
//!
//! * [`spectrum`]: closed-form energies, eigenfunctions, stability bound and
//!   the quantum/classical energy decomposition,
//! * [`oracle`]: an independent finite-difference diagonalization of each
//!   sector used to check every closed-form result,
//! * [`spectroscopy`]: transition lines, level crossings versus `Gbar`,
//!   regime weights, and recovery of `Omega` from one level's spin sublevels.
//!
//! All quantities at the API surface are SI. Internally the spectral code
//! works in oscillator units (energy `hbar*Omega`, length
//! `sqrt(hbar / (m*Omega))`), see [`units::OscillatorUnits`].

pub mod error;
pub mod oracle;
pub mod oscillator;
pub mod spectroscopy;
pub mod spectrum;
pub mod system;
pub mod units;

pub use error::{Error, ErrorKind, Result};
pub use system::{FieldProfile, LevelLabel, Spin, SpinLevelIndex, SpinSystem};
