//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain numbers and returns a JSON string; errors are
//! thrown as a message string. The particle is an electron throughout.
//! The functions are ordinary Rust functions as well, so they are tested
//! natively.

use parabolic_mr::spectroscopy::figure1::{figure1, Figure1Config};
use parabolic_mr::spectroscopy::{identify_frequency, transition_lines, SelectionRule};
use parabolic_mr::units::{ELECTRON_GAMMA, ELECTRON_MASS, HBAR};
use parabolic_mr::{FieldProfile, Spin, SpinSystem};
use serde::Serialize;
use wasm_bindgen::prelude::*;

type Reply = Result<String, String>;

fn to_json<T: Serialize>(value: &T) -> Reply {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn electron(spin: f64, omega: f64, offset: f64) -> Result<SpinSystem, String> {
    let spin = Spin::from_f64(spin).map_err(|e| e.to_string())?;
    SpinSystem::new(ELECTRON_MASS, ELECTRON_GAMMA, spin, omega, offset).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Curves {
    gbar_crit: f64,
    gbars: Vec<f64>,
    /// `[M, n]` per curve.
    levels: Vec<(f64, u32)>,
    /// `energies[j][i]`: curve `j` at `gbars[i]`, in units of hbar*Omega.
    energies: Vec<Vec<f64>>,
    /// `[gbar, energy / (hbar*Omega)]`.
    crossings: Vec<(f64, f64)>,
}

/// Level curves `E_{M,n}` over `Gbar` in `[0, fraction * Gbar_crit]` with
/// their crossings. `omega` in rad/s, `offset` in m, `g` in T/m.
#[wasm_bindgen]
pub fn level_curves(
    spin: f64,
    omega: f64,
    offset: f64,
    g: f64,
    fraction: f64,
    n_max: u32,
    points: u32,
) -> Reply {
    let cfg = Figure1Config {
        spin: Spin::from_f64(spin).map_err(|e| e.to_string())?,
        omega,
        offset,
        g,
        gbar_fraction: fraction,
        n_max,
        points: points as usize,
        scan_steps: (4 * points as usize).max(64),
        ..Figure1Config::default()
    };
    let data = figure1(&cfg).map_err(|e| e.to_string())?;
    let unit = HBAR * omega;
    let energies = (0..data.levels.len())
        .map(|j| data.energies.iter().map(|row| row[j] / unit).collect())
        .collect();
    to_json(&Curves {
        gbar_crit: data.gbar_crit,
        gbars: data.gbars,
        levels: data.levels.iter().map(|l| (l.m.value(), l.n)).collect(),
        energies,
        crossings: data
            .scan
            .crossings
            .iter()
            .map(|c| (c.gbar, c.energy / unit))
            .collect(),
    })
}

/// `M -> M + 1` lines of level `n` (Hz, ascending) in the field
/// `b0 + g x + gbar x^2`.
#[wasm_bindgen]
pub fn line_spectrum(
    spin: f64,
    omega: f64,
    offset: f64,
    b0: f64,
    g: f64,
    gbar: f64,
    n: u32,
) -> Reply {
    let sys = electron(spin, omega, offset)?;
    let field = FieldProfile::new(b0, g, gbar).map_err(|e| e.to_string())?;
    let lines =
        transition_lines(&sys, &field, n, SelectionRule::DeltaM1FixedN).map_err(|e| e.to_string())?;
    to_json(&lines)
}

/// Fits `Omega` (rad/s) within `[lo, hi]` to measured `M -> M + 1` lines of
/// level `n`, given in Hz.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn identify(
    measured_hz: &[f64],
    spin: f64,
    offset: f64,
    b0: f64,
    g: f64,
    gbar: f64,
    n: u32,
    lo: f64,
    hi: f64,
) -> Reply {
    let template = electron(spin, (lo * hi).sqrt(), offset)?;
    let field = FieldProfile::new(b0, g, gbar).map_err(|e| e.to_string())?;
    let result =
        identify_frequency(measured_hz, &template, &field, n, (lo, hi)).map_err(|e| e.to_string())?;
    to_json(&result)
}
