//! Observables built on the closed-form spectrum: transition lines, level
//! crossings versus `Gbar`, quantum/classical regime weights and the
//! identification of `Omega` from one level's spin-sublevel lines.

mod crossings;
pub mod figure1;
mod inversion;
mod lines;
mod regime;

pub use crossings::{
    crossing_scan, level_curves, stable_gbar_interval, CrossingPoint, CrossingScan,
    PossibleTangency, ENERGY_TOLERANCE, MIN_SCAN_STEPS,
};
pub use inversion::{
    identify_frequency, identify_frequency_with, model_lines_hz, InversionOptions,
    InversionResult,
};
pub use lines::{transition_lines, SelectionRule, TransitionLine};
pub use regime::{regime_weights, RegimeWeights};
