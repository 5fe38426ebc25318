//! Level structure versus `Gbar` for an electron spin-3/2 oscillator:
//! level curves, their crossings and the `M -> M + 1` lines along the sweep.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::critical_gbar;
use crate::system::{FieldProfile, LevelLabel, Spin, SpinSystem};
use crate::units::{ELECTRON_GAMMA, ELECTRON_MASS};

use super::crossings::{crossing_scan, level_curves, CrossingScan};
use super::lines::{transition_lines, SelectionRule, TransitionLine};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Figure1Config {
    pub mass: f64,
    pub gamma: f64,
    pub spin: Spin,
    /// rad/s
    pub omega: f64,
    pub offset: f64,
    pub b0: f64,
    pub g: f64,
    /// Sweep runs over `[0, gbar_fraction * Gbar_crit]`.
    pub gbar_fraction: f64,
    pub n_max: u32,
    /// Intervals of the tabulated sweep.
    pub points: usize,
    /// Intervals of the crossing scan.
    pub scan_steps: usize,
    /// Oscillator level whose sublevel lines are tabulated.
    pub line_level: u32,
}

impl Default for Figure1Config {
    fn default() -> Self {
        Figure1Config {
            mass: ELECTRON_MASS,
            gamma: ELECTRON_GAMMA,
            spin: Spin::from_twice(3),
            omega: 1e5,
            offset: 1e-4,
            b0: 0.0,
            g: -0.003,
            gbar_fraction: 0.999,
            n_max: 3,
            points: 400,
            scan_steps: 4000,
            line_level: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure1Data {
    pub system: SpinSystem,
    pub gbar_crit: f64,
    pub gbars: Vec<f64>,
    /// Ordered by `(n, M)`.
    pub levels: Vec<LevelLabel>,
    /// `energies[i][j]`: level `j` at `gbars[i]`, J.
    pub energies: Vec<Vec<f64>>,
    pub scan: CrossingScan,
    /// `M -> M + 1` lines of `line_level` at each `gbars[i]`.
    pub lines: Vec<Vec<TransitionLine>>,
}

pub fn figure1(cfg: &Figure1Config) -> Result<Figure1Data> {
    let system = SpinSystem::new(cfg.mass, cfg.gamma, cfg.spin, cfg.omega, cfg.offset)?;
    let base = FieldProfile::new(cfg.b0, cfg.g, 0.0)?;
    if !(cfg.gbar_fraction > 0.0 && cfg.gbar_fraction < 1.0) {
        return Err(Error::invalid_argument("gbar_fraction", "must lie in (0, 1)"));
    }
    if cfg.points < 1 {
        return Err(Error::invalid_argument("points", "must be positive"));
    }
    let gbar_crit = critical_gbar(&system);
    if !gbar_crit.is_finite() {
        return Err(Error::invalid_argument("spin", "needs S > 0 and gamma != 0"));
    }
    // sweep toward the side where the most exposed sublevel dissociates
    let top = cfg.gbar_fraction * gbar_crit;
    let gbars: Vec<f64> = (0..=cfg.points)
        .map(|i| top * (i as f64 / cfg.points as f64))
        .collect();
    let levels: Vec<LevelLabel> = (0..=cfg.n_max)
        .flat_map(|n| system.spin.levels().map(move |m| LevelLabel::new(m, n)))
        .collect();
    let energies = level_curves(&system, &base, &gbars, &levels)?;
    let scan = crossing_scan(&system, &base, (0.0, top), &levels, cfg.scan_steps)?;
    let lines = gbars
        .iter()
        .map(|&g| {
            transition_lines(
                &system,
                &base.with_gbar(g),
                cfg.line_level,
                SelectionRule::DeltaM1FixedN,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Figure1Data {
        system,
        gbar_crit,
        gbars,
        levels,
        energies,
        scan,
        lines,
    })
}
