use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::{critical_gbar, energy_level, transition_angular_frequency};
use crate::system::{FieldProfile, LevelLabel, SpinSystem};
use crate::units::HBAR;

/// Smallest number of scan intervals accepted by [`crossing_scan`].
pub const MIN_SCAN_STEPS: usize = 16;

/// Relative energy tolerance for "equal" levels.
pub const ENERGY_TOLERANCE: f64 = 1e-10;

/// Safety margin kept from a dissociation bound when clipping a scan.
const CLIP_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossingPoint {
    pub gbar: f64,
    pub level_a: LevelLabel,
    pub level_b: LevelLabel,
    /// `E_a` at `gbar`, J.
    pub energy: f64,
    /// Width of the final bisection bracket, T/m^2.
    pub bracket_width: f64,
}

/// A node where two levels came within tolerance without changing order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PossibleTangency {
    pub gbar: f64,
    pub level_a: LevelLabel,
    pub level_b: LevelLabel,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingScan {
    /// Scanned range after clipping to the stable interval.
    pub gbar_range: (f64, f64),
    pub steps: usize,
    /// Ordered by `(gbar, level_a, level_b)`.
    pub crossings: Vec<CrossingPoint>,
    /// Pairs degenerate at every scan node: no isolated crossings.
    pub degenerate_pairs: Vec<(LevelLabel, LevelLabel)>,
    pub possible_tangencies: Vec<PossibleTangency>,
}

/// Interval of `Gbar` over which every listed level keeps `Mbar < 1`.
pub fn stable_gbar_interval(sys: &SpinSystem, levels: &[LevelLabel]) -> (f64, f64) {
    let crit = critical_gbar(sys);
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for l in levels {
        if l.m.twice() == 0 || !crit.is_finite() {
            continue;
        }
        // Mbar = s Gbar / crit with s = sign(gamma) M / S
        let s = sys.gamma.signum() * l.m.twice() as f64 / sys.spin.twice() as f64;
        let bound = crit / s;
        if s > 0.0 {
            hi = hi.min(bound);
        } else {
            lo = lo.max(bound);
        }
    }
    (lo, hi)
}

struct PairSamples {
    a: LevelLabel,
    b: LevelLabel,
}

/// Signed `E_b - E_a` and `max(|E_a|, |E_b|)` at one `Gbar`.
fn gap(
    sys: &SpinSystem,
    base: &FieldProfile,
    pair: &PairSamples,
    gbar: f64,
) -> Result<(f64, f64, f64)> {
    let field = base.with_gbar(gbar);
    let ea = energy_level(sys, &field, pair.a.m, pair.a.n)?;
    let eb = energy_level(sys, &field, pair.b.m, pair.b.n)?;
    let d = HBAR * transition_angular_frequency(sys, &field, pair.a, pair.b)?;
    Ok((d, ea, ea.abs().max(eb.abs())))
}

/// Locates every `Gbar` in `gbar_range` at which two of `levels` coincide.
///
/// The range is clipped to the stable interval of the listed levels. Each
/// pair's gap is sampled at `steps + 1` equally spaced nodes and every sign
/// change is bisected down to the floating-point limit. Tangential contacts
/// are reported separately since they produce no sign change.
pub fn crossing_scan(
    sys: &SpinSystem,
    field_base: &FieldProfile,
    gbar_range: (f64, f64),
    levels: &[LevelLabel],
    steps: usize,
) -> Result<CrossingScan> {
    sys.validate()?;
    field_base.validate()?;
    if levels.is_empty() {
        return Err(Error::invalid_argument("levels", "must not be empty"));
    }
    if steps < MIN_SCAN_STEPS {
        return Err(Error::invalid_argument(
            "steps",
            format!("must be at least {MIN_SCAN_STEPS}"),
        ));
    }
    let (mut lo, mut hi) = gbar_range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::invalid_argument(
            "gbar_range",
            "must be finite and ordered",
        ));
    }
    for (i, l) in levels.iter().enumerate() {
        sys.check_level(l.m)?;
        if levels[..i].contains(l) {
            return Err(Error::invalid_argument(
                "levels",
                format!("duplicate level (M = {}, n = {})", l.m, l.n),
            ));
        }
    }

    let (stable_lo, stable_hi) = stable_gbar_interval(sys, levels);
    if hi <= stable_lo || lo >= stable_hi {
        return Err(Error::invalid_argument(
            "gbar_range",
            "lies entirely in the dissociated region",
        ));
    }
    if hi >= stable_hi {
        hi = stable_hi - stable_hi.abs() * CLIP_MARGIN;
    }
    if lo <= stable_lo {
        lo = stable_lo + stable_lo.abs() * CLIP_MARGIN;
    }
    if !(lo <= hi) {
        return Err(Error::invalid_argument(
            "gbar_range",
            "stable part is empty",
        ));
    }

    let nodes: Vec<f64> = (0..=steps)
        .map(|i| {
            if i == steps {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / steps as f64)
            }
        })
        .collect();

    let mut crossings = Vec::new();
    let mut degenerate_pairs = Vec::new();
    let mut possible_tangencies = Vec::new();
    for (i, &a) in levels.iter().enumerate() {
        for &b in &levels[i + 1..] {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            let pair = PairSamples { a, b };
            let samples = nodes
                .iter()
                .map(|&g| gap(sys, field_base, &pair, g))
                .collect::<Result<Vec<_>>>()?;
            let close: Vec<bool> = samples
                .iter()
                .map(|&(d, _, scale)| d.abs() <= ENERGY_TOLERANCE * scale)
                .collect();
            if close.iter().all(|&c| c) {
                degenerate_pairs.push((a, b));
                continue;
            }
            for k in 0..=steps {
                let (d, ea, _) = samples[k];
                if d == 0.0 {
                    crossings.push(CrossingPoint {
                        gbar: nodes[k],
                        level_a: a,
                        level_b: b,
                        energy: ea,
                        bracket_width: 0.0,
                    });
                    continue;
                }
                if k < steps {
                    let next = samples[k + 1].0;
                    if next != 0.0 && d.signum() != next.signum() {
                        crossings.push(bisect(sys, field_base, &pair, nodes[k], nodes[k + 1], d)?);
                    }
                }
                if k > 0 && k < steps && close[k] {
                    let (prev, next) = (samples[k - 1].0, samples[k + 1].0);
                    if prev.signum() == d.signum() && next.signum() == d.signum() {
                        possible_tangencies.push(PossibleTangency {
                            gbar: nodes[k],
                            level_a: a,
                            level_b: b,
                        });
                    }
                }
            }
        }
    }
    crossings.sort_by(|x, y| {
        x.gbar
            .total_cmp(&y.gbar)
            .then(x.level_a.cmp(&y.level_a))
            .then(x.level_b.cmp(&y.level_b))
    });
    possible_tangencies.sort_by(|x, y| {
        x.gbar
            .total_cmp(&y.gbar)
            .then(x.level_a.cmp(&y.level_a))
            .then(x.level_b.cmp(&y.level_b))
    });
    Ok(CrossingScan {
        gbar_range: (lo, hi),
        steps,
        crossings,
        degenerate_pairs,
        possible_tangencies,
    })
}

fn bisect(
    sys: &SpinSystem,
    base: &FieldProfile,
    pair: &PairSamples,
    mut lo: f64,
    mut hi: f64,
    d_lo: f64,
) -> Result<CrossingPoint> {
    let sign_lo = d_lo.signum();
    let (mut best_g, mut best) = (lo, gap(sys, base, pair, lo)?);
    let at_hi = gap(sys, base, pair, hi)?;
    if at_hi.0.abs() < best.0.abs() {
        best_g = hi;
        best = at_hi;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = gap(sys, base, pair, mid)?;
        if s.0.abs() < best.0.abs() {
            best_g = mid;
            best = s;
        }
        if s.0 == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if s.0.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CrossingPoint {
        gbar: best_g,
        level_a: pair.a,
        level_b: pair.b,
        energy: best.1,
        bracket_width: hi - lo,
    })
}

/// Energies of `levels` at each `Gbar` in `gbars`, row per `Gbar`.
pub fn level_curves(
    sys: &SpinSystem,
    field_base: &FieldProfile,
    gbars: &[f64],
    levels: &[LevelLabel],
) -> Result<Vec<Vec<f64>>> {
    gbars
        .iter()
        .map(|&g| {
            let field = field_base.with_gbar(g);
            levels
                .iter()
                .map(|l| energy_level(sys, &field, l.m, l.n))
                .collect()
        })
        .collect()
}
