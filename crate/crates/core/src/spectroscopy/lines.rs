use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{effective_frequency, transition_angular_frequency};
use crate::system::{FieldProfile, LevelLabel, SpinSystem};
use crate::units::HBAR;

/// Which level pairs produce lines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum SelectionRule {
    /// `M -> M + 1` within oscillator level `n` (2S lines).
    DeltaM1FixedN,
    /// `n -> n + 1` within every spin sector.
    DeltaN1FixedM,
    /// Every pair of levels with `n <= n_max`, optionally only lines at or
    /// below `cutoff_hz`.
    AllPairsWithin { n_max: u32, cutoff_hz: Option<f64> },
}

/// A line between two levels; `from` is the lower-energy level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionLine {
    pub from: LevelLabel,
    pub to: LevelLabel,
    /// J, nonnegative
    pub delta_e: f64,
    pub frequency_hz: f64,
    pub frequency_rad: f64,
}

impl TransitionLine {
    /// Line between two levels, oriented from the lower to the upper one.
    pub fn between(
        sys: &SpinSystem,
        field: &FieldProfile,
        a: LevelLabel,
        b: LevelLabel,
    ) -> Result<Self> {
        let w = transition_angular_frequency(sys, field, a, b)?;
        let (from, to) = if w < 0.0 { (b, a) } else { (a, b) };
        let w = w.abs();
        Ok(TransitionLine {
            from,
            to,
            delta_e: HBAR * w,
            frequency_hz: w / (2.0 * PI),
            frequency_rad: w,
        })
    }
}

fn sort_lines(lines: &mut [TransitionLine]) {
    lines.sort_by(|a, b| {
        a.frequency_hz
            .total_cmp(&b.frequency_hz)
            .then(a.from.cmp(&b.from))
            .then(a.to.cmp(&b.to))
    });
}

/// Lines selected by `rule`, ascending in frequency. `n` is the oscillator
/// level for the fixed-`n` and fixed-`M` rules.
pub fn transition_lines(
    sys: &SpinSystem,
    field: &FieldProfile,
    n: u32,
    rule: SelectionRule,
) -> Result<Vec<TransitionLine>> {
    sys.validate()?;
    field.validate()?;
    // name the first dissociated sector before doing anything else
    for m in sys.spin.levels() {
        effective_frequency(sys, field, m)?;
    }
    let mut lines = Vec::new();
    match rule {
        SelectionRule::DeltaM1FixedN => {
            let ms: Vec<_> = sys.spin.levels().collect();
            for pair in ms.windows(2) {
                lines.push(TransitionLine::between(
                    sys,
                    field,
                    LevelLabel::new(pair[0], n),
                    LevelLabel::new(pair[1], n),
                )?);
            }
        }
        SelectionRule::DeltaN1FixedM => {
            for m in sys.spin.levels() {
                lines.push(TransitionLine::between(
                    sys,
                    field,
                    LevelLabel::new(m, n),
                    LevelLabel::new(m, n + 1),
                )?);
            }
        }
        SelectionRule::AllPairsWithin { n_max, cutoff_hz } => {
            if let Some(c) = cutoff_hz {
                if !(c >= 0.0) {
                    return Err(Error::invalid_argument("cutoff_hz", "must be nonnegative"));
                }
            }
            let labels: Vec<LevelLabel> = sys
                .spin
                .levels()
                .flat_map(|m| (0..=n_max).map(move |k| LevelLabel::new(m, k)))
                .collect();
            for (i, &a) in labels.iter().enumerate() {
                for &b in &labels[i + 1..] {
                    let line = TransitionLine::between(sys, field, a, b)?;
                    if cutoff_hz.is_none_or(|c| line.frequency_hz <= c) {
                        lines.push(line);
                    }
                }
            }
        }
    }
    sort_lines(&mut lines);
    Ok(lines)
}
