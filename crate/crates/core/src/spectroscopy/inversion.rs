use serde::Serialize;

use crate::error::{Error, Result};
use crate::system::{FieldProfile, SpinSystem};

use super::lines::{transition_lines, SelectionRule};

/// Outcome of fitting `Omega` to one level's spin-sublevel lines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InversionResult {
    /// rad/s; `None` when not identifiable.
    pub omega_estimate: Option<f64>,
    /// Hz, at the estimate (or at the bracket's geometric centre).
    pub residual_rms: f64,
    pub bracket: (f64, f64),
    pub identifiable: bool,
    /// Hz; an identified optimum lies below this.
    pub fit_tolerance: f64,
    /// Distinct frequencies in the bracket fitting within `fit_tolerance`.
    pub optima: usize,
}

/// Fitted log-frequencies closer than this are the same optimum.
const DISTINCT_OPTIMA: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionOptions {
    /// Log-spaced points of the coarse scan.
    pub scan_points: usize,
    /// Relative width at which golden-section refinement stops.
    pub relative_tolerance: f64,
    /// Hz; default is `1e-6` times the RMS of the measured lines.
    pub fit_tolerance: Option<f64>,
    /// Residual variation below this fraction counts as flat.
    pub flatness: f64,
}

impl Default for InversionOptions {
    fn default() -> Self {
        InversionOptions {
            scan_points: 256,
            relative_tolerance: 1e-10,
            fit_tolerance: None,
            flatness: 1e-12,
        }
    }
}

/// Model `M -> M + 1` line frequencies (Hz) of level `n`, ascending.
pub fn model_lines_hz(sys: &SpinSystem, field: &FieldProfile, n: u32) -> Result<Vec<f64>> {
    Ok(transition_lines(sys, field, n, SelectionRule::DeltaM1FixedN)?
        .into_iter()
        .map(|l| l.frequency_hz)
        .collect())
}

/// RMS mismatch between sorted measured lines and the model at one `Omega`.
///
/// A full line set is matched in order; a partial one line by line to the
/// nearest model line. Dissociated trial frequencies score infinity.
fn residual(
    measured: &[f64],
    template: &SpinSystem,
    field: &FieldProfile,
    n: u32,
    omega: f64,
) -> Result<f64> {
    let model = match model_lines_hz(&template.with_omega(omega), field, n) {
        Ok(m) => m,
        Err(Error::Dissociation { .. }) => return Ok(f64::INFINITY),
        Err(e) => return Err(e),
    };
    let sum: f64 = if measured.len() == model.len() {
        measured.iter().zip(&model).map(|(a, b)| (a - b) * (a - b)).sum()
    } else {
        measured
            .iter()
            .map(|a| {
                model
                    .iter()
                    .map(|b| (a - b) * (a - b))
                    .fold(f64::INFINITY, f64::min)
            })
            .sum()
    };
    Ok((sum / measured.len() as f64).sqrt())
}

/// Recovers `Omega` from measured `M -> M + 1` lines (Hz) of level `n`.
///
/// `template` supplies every parameter except `Omega`. The residual is
/// scanned on a logarithmic grid over `bracket` (rad/s), then refined by
/// golden-section search. A homogeneous field, a residual that does not
/// vary over the bracket, or several distinct exact fits (possible when few
/// lines are given) yield `identifiable == false` and no estimate.
pub fn identify_frequency(
    measured_hz: &[f64],
    template: &SpinSystem,
    field: &FieldProfile,
    n: u32,
    bracket: (f64, f64),
) -> Result<InversionResult> {
    identify_frequency_with(measured_hz, template, field, n, bracket, InversionOptions::default())
}

pub fn identify_frequency_with(
    measured_hz: &[f64],
    template: &SpinSystem,
    field: &FieldProfile,
    n: u32,
    bracket: (f64, f64),
    options: InversionOptions,
) -> Result<InversionResult> {
    field.validate()?;
    if measured_hz.is_empty() {
        return Err(Error::invalid_argument("lines", "need at least one measured line"));
    }
    if measured_hz.iter().any(|f| !f.is_finite()) {
        return Err(Error::invalid_argument("lines", "must be finite"));
    }
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::invalid_argument("bracket", "must satisfy 0 < lo < hi"));
    }
    if options.scan_points < 3 {
        return Err(Error::invalid_argument("scan_points", "must be at least 3"));
    }
    let lines_per_level = template.spin.twice() as usize;
    if lines_per_level == 0 {
        return Err(Error::invalid_argument("spin", "S = 0 has no sublevel lines"));
    }
    if measured_hz.len() > lines_per_level {
        return Err(Error::invalid_argument(
            "lines",
            format!("{} lines given but S allows {lines_per_level}", measured_hz.len()),
        ));
    }
    template.with_omega(lo).validate()?;

    let mut measured = measured_hz.to_vec();
    measured.sort_by(f64::total_cmp);
    let fit_tolerance = options.fit_tolerance.unwrap_or_else(|| {
        let rms = (measured.iter().map(|f| f * f).sum::<f64>() / measured.len() as f64).sqrt();
        1e-6 * rms
    });
    let eval = |t: f64| residual(&measured, template, field, n, t.exp());

    let (tlo, thi) = (lo.ln(), hi.ln());
    let refuse = |at: f64| -> Result<InversionResult> {
        Ok(InversionResult {
            omega_estimate: None,
            residual_rms: eval(at)?,
            bracket,
            identifiable: false,
            fit_tolerance,
            optima: 0,
        })
    };
    if field.is_homogeneous() {
        return refuse(0.5 * (tlo + thi));
    }

    let k = options.scan_points;
    let ts: Vec<f64> = (0..k)
        .map(|i| match i {
            0 => tlo,
            _ if i == k - 1 => thi,
            _ => tlo + (thi - tlo) * (i as f64 / (k - 1) as f64),
        })
        .collect();
    let rs = ts.iter().map(|&t| eval(t)).collect::<Result<Vec<_>>>()?;
    let finite: Vec<f64> = rs.iter().copied().filter(|r| r.is_finite()).collect();
    if finite.is_empty() {
        return Err(Error::BracketWithoutOptimum { lo, hi });
    }
    let rmax = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let rmin = finite.iter().copied().fold(f64::INFINITY, f64::min);
    if finite.len() == rs.len() && rmax - rmin <= options.flatness * rmax.abs() {
        return refuse(0.5 * (tlo + thi));
    }

    // every coarse local minimum is refined; more than one exact fit means
    // the lines do not pin Omega down inside the bracket
    let local: Vec<usize> = (0..k)
        .filter(|&i| {
            rs[i].is_finite()
                && (i == 0 || rs[i] <= rs[i - 1])
                && (i == k - 1 || rs[i] <= rs[i + 1])
        })
        .collect();
    let mut optima = Vec::with_capacity(local.len());
    for &i in &local {
        let (mut a, mut b) = (ts[i.saturating_sub(1)], ts[(i + 1).min(k - 1)]);
        let (t, r) = golden_section(&eval, &mut a, &mut b, options.relative_tolerance)?;
        optima.push(if rs[i] < r { (i, ts[i], rs[i]) } else { (i, t, r) });
    }
    let &(best, t_best, r_best) = optima
        .iter()
        .min_by(|x, y| x.2.total_cmp(&y.2))
        .expect("a finite scan has a local minimum");

    let at_edge = (best == 0 && t_best - tlo <= options.relative_tolerance)
        || (best == k - 1 && thi - t_best <= options.relative_tolerance);
    if at_edge && r_best > fit_tolerance {
        return Err(Error::BracketWithoutOptimum { lo, hi });
    }

    let mut fits: Vec<f64> = optima
        .iter()
        .filter(|o| o.2 <= fit_tolerance)
        .map(|o| o.1)
        .collect();
    fits.sort_by(f64::total_cmp);
    fits.dedup_by(|x, y| (*x - *y).abs() <= DISTINCT_OPTIMA);
    if fits.len() > 1 {
        return Ok(InversionResult {
            omega_estimate: None,
            residual_rms: r_best,
            bracket,
            identifiable: false,
            fit_tolerance,
            optima: fits.len(),
        });
    }
    Ok(InversionResult {
        omega_estimate: Some(t_best.exp().clamp(lo, hi)),
        residual_rms: r_best,
        bracket,
        identifiable: true,
        fit_tolerance,
        optima: fits.len(),
    })
}

/// Minimizes `f` over `[a, b]` (log-frequency) until `b - a <= tol`.
fn golden_section(
    f: &dyn Fn(f64) -> Result<f64>,
    a: &mut f64,
    b: &mut f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = *b - inv_phi * (*b - *a);
    let mut d = *a + inv_phi * (*b - *a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while *b - *a > tol {
        if fc <= fd {
            *b = d;
            d = c;
            fd = fc;
            c = *b - inv_phi * (*b - *a);
            fc = f(c)?;
        } else {
            *a = c;
            c = d;
            fc = fd;
            d = *a + inv_phi * (*b - *a);
            fd = f(d)?;
        }
        if c >= d {
            break;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}
