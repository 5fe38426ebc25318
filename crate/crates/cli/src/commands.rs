use parabolic_mr::oracle::{validate_sector, ValidationReport};
use parabolic_mr::spectroscopy::figure1::{figure1, Figure1Config};
use parabolic_mr::spectroscopy::{
    crossing_scan, identify_frequency_with, transition_lines, CrossingPoint, InversionOptions,
    SelectionRule, TransitionLine,
};
use parabolic_mr::spectrum::{critical_gbar, spectrum, stability_check};
use parabolic_mr::units::{OmegaUnit, HBAR};
use parabolic_mr::{
    Error, FieldProfile, LevelLabel, Spin, SpinLevelIndex, SpinSystem,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RuleName, Scenario};
use crate::output::{read_line_list, to_json, Cell, Table};
use crate::{Cli, CliError, Command, Format, Outputs};

pub fn execute(cli: &Cli, scenario: Option<&Scenario>) -> Result<Outputs, CliError> {
    let unit_override = cli.omega_unit.map(OmegaUnit::from);
    if cli.command == Command::Figure1 {
        let default = Scenario::default();
        return figure1_command(scenario.unwrap_or(&default), unit_override, cli.format);
    }
    let scenario = scenario.ok_or_else(|| {
        CliError::invalid("config: --config is required for this subcommand")
    })?;
    let unit = scenario.unit(unit_override)?;
    match cli.command {
        Command::Spectrum => spectrum_command(scenario, unit, cli.format),
        Command::Lines => lines_command(scenario, unit, cli.format),
        Command::Crossings => crossings_command(scenario, unit, cli.format),
        Command::Invert => invert_command(scenario, unit),
        Command::Validate => validate_command(scenario, unit),
        Command::Figure1 => unreachable!("handled above"),
    }
}

/// Refuses a dissociated configuration up front, naming the worst `M`.
fn require_stable(sys: &SpinSystem, field: &FieldProfile) -> Result<(), CliError> {
    let report = stability_check(sys, field)?;
    match report.worst_m {
        Some(m) if !report.stable => Err(Error::Dissociation {
            m,
            mbar: report.max_mbar,
        }
        .into()),
        _ => Ok(()),
    }
}

fn file(name: &str, format: Format) -> String {
    format!("{name}.{}", format.extension())
}

fn spectrum_command(s: &Scenario, unit: OmegaUnit, format: Format) -> Result<Outputs, CliError> {
    let sys = s.system(unit)?;
    let field = s.field()?;
    require_stable(&sys, &field)?;
    let levels = spectrum(&sys, &field, s.spectrum.n_max)?;
    let quantum = HBAR * sys.omega;
    let mut table = Table::new(["M", "n", "energy_J", "energy_hbar_omega"]);
    for l in &levels {
        table.push(vec![
            l.m.into(),
            l.n.into(),
            l.energy.into(),
            (l.energy / quantum).into(),
        ]);
    }
    let mut out = Outputs::default();
    out.add(file("levels", format), table.encode(format)?);
    out.summary
        .push(format!("{} levels written", levels.len()));
    Ok(out)
}

fn line_key(l: &TransitionLine) -> (LevelLabel, LevelLabel) {
    (l.from, l.to)
}

pub fn lines_table(lines: &[TransitionLine]) -> Table {
    let mut sorted = lines.to_vec();
    sorted.sort_by_key(line_key);
    let mut table = Table::new(["M_from", "n_from", "M_to", "n_to", "delta_e_J", "freq_hz"]);
    for l in &sorted {
        table.push(vec![
            l.from.m.into(),
            l.from.n.into(),
            l.to.m.into(),
            l.to.n.into(),
            l.delta_e.into(),
            l.frequency_hz.into(),
        ]);
    }
    table
}

fn lines_command(s: &Scenario, unit: OmegaUnit, format: Format) -> Result<Outputs, CliError> {
    let sys = s.system(unit)?;
    let field = s.field()?;
    let task = &s.lines;
    let rule = match task.rule {
        RuleName::DeltaM1FixedN => SelectionRule::DeltaM1FixedN,
        RuleName::DeltaN1FixedM => SelectionRule::DeltaN1FixedM,
        RuleName::AllPairsWithin => SelectionRule::AllPairsWithin {
            n_max: task.n_max,
            cutoff_hz: task.cutoff_hz,
        },
    };
    let lines = transition_lines(&sys, &field, task.n, rule)?;
    let mut out = Outputs::default();
    out.add(file("lines", format), lines_table(&lines).encode(format)?);
    out.summary.push(format!("{} lines written", lines.len()));
    Ok(out)
}

pub fn crossings_table(crossings: &[CrossingPoint]) -> Table {
    let mut table = Table::new(["gbar", "M_a", "n_a", "M_b", "n_b", "energy_J"]);
    for c in crossings {
        table.push(vec![
            c.gbar.into(),
            c.level_a.m.into(),
            c.level_a.n.into(),
            c.level_b.m.into(),
            c.level_b.n.into(),
            c.energy.into(),
        ]);
    }
    table
}

fn all_levels(spin: Spin, n_max: u32) -> Vec<LevelLabel> {
    (0..=n_max)
        .flat_map(|n| spin.levels().map(move |m| LevelLabel::new(m, n)))
        .collect()
}

fn describe(l: LevelLabel) -> String {
    format!("(M={},n={})", l.m, l.n)
}

fn crossings_command(s: &Scenario, unit: OmegaUnit, format: Format) -> Result<Outputs, CliError> {
    let sys = s.system(unit)?;
    let field = s.field()?;
    let task = &s.crossings;
    let levels = match &task.levels {
        Some(list) => list
            .iter()
            .map(|&(m, n)| Ok(LevelLabel::new(SpinLevelIndex::from_f64(m)?, n)))
            .collect::<Result<Vec<_>, Error>>()?,
        None => all_levels(sys.spin, task.n_max),
    };
    let range = match task.gbar_range {
        Some([lo, hi]) => (lo, hi),
        None => (0.0, 0.999 * critical_gbar(&sys)),
    };
    let scan = crossing_scan(&sys, &field, range, &levels, task.steps)?;
    let mut out = Outputs::default();
    out.add(
        file("crossings", format),
        crossings_table(&scan.crossings).encode(format)?,
    );
    out.add("crossings_notes.json", to_json(&scan_notes(&scan))?);
    out.summary
        .push(format!("{} crossings written", scan.crossings.len()));
    for (a, b) in &scan.degenerate_pairs {
        out.summary.push(format!(
            "degenerate, no isolated crossings: {} {}",
            describe(*a),
            describe(*b)
        ));
    }
    for t in &scan.possible_tangencies {
        out.summary.push(format!(
            "possible tangency at gbar={:.16e}: {} {}",
            t.gbar,
            describe(t.level_a),
            describe(t.level_b)
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ScanNotes<'a> {
    gbar_range: (f64, f64),
    steps: usize,
    crossings: usize,
    degenerate_pairs: &'a [(LevelLabel, LevelLabel)],
    possible_tangencies: &'a [parabolic_mr::spectroscopy::PossibleTangency],
}

fn scan_notes(scan: &parabolic_mr::spectroscopy::CrossingScan) -> ScanNotes<'_> {
    ScanNotes {
        gbar_range: scan.gbar_range,
        steps: scan.steps,
        crossings: scan.crossings.len(),
        degenerate_pairs: &scan.degenerate_pairs,
        possible_tangencies: &scan.possible_tangencies,
    }
}

#[derive(Serialize)]
struct InversionRecord {
    n: u32,
    lines_used: usize,
    identifiable: bool,
    omega_estimate_rad_s: Option<f64>,
    omega_estimate_hz: Option<f64>,
    residual_rms_hz: f64,
    fit_tolerance_hz: f64,
    bracket_rad_s: (f64, f64),
    optima: usize,
}

fn measured_lines(s: &Scenario) -> Result<Vec<f64>, CliError> {
    let task = &s.invert;
    match (&task.measured_hz, &task.lines_file) {
        (Some(_), Some(_)) => Err(CliError::invalid(
            "invert: give either measured_hz or lines_file, not both",
        )),
        (Some(v), None) => Ok(v.clone()),
        (None, Some(path)) => {
            let records = read_line_list(&s.resolve(path))?;
            let selected: Vec<f64> = records
                .iter()
                .filter(|r| match (r.m_from, r.m_to, r.n_from, r.n_to) {
                    (Some(a), Some(b), Some(nf), Some(nt)) => {
                        (b - a).abs() == 1.0 && nf == task.n && nt == task.n
                    }
                    _ => true,
                })
                .map(|r| r.freq_hz)
                .collect();
            if selected.is_empty() {
                return Err(CliError::invalid(format!(
                    "invert: lines_file has no M -> M+1 lines of level n = {}",
                    task.n
                )));
            }
            Ok(selected)
        }
        (None, None) => Err(CliError::invalid(
            "invert: missing key measured_hz or lines_file",
        )),
    }
}

fn invert_command(s: &Scenario, unit: OmegaUnit) -> Result<Outputs, CliError> {
    let task = &s.invert;
    let [lo, hi] = task
        .bracket
        .ok_or_else(|| CliError::invalid("invert: missing key bracket"))?;
    let bracket = (unit.to_angular(lo), unit.to_angular(hi));
    if !(bracket.0 > 0.0 && bracket.1 > bracket.0 && bracket.1.is_finite()) {
        return Err(CliError::invalid("invert: bracket must satisfy 0 < lo < hi"));
    }
    // omega is the unknown; any in-bracket value serves as a placeholder
    let template = s.system_with_omega((bracket.0 * bracket.1).sqrt())?;
    let field = s.field()?;
    let measured = measured_lines(s)?;
    let options = InversionOptions {
        fit_tolerance: task.fit_tolerance_hz,
        ..InversionOptions::default()
    };
    let result = identify_frequency_with(&measured, &template, &field, task.n, bracket, options)?;
    let record = InversionRecord {
        n: task.n,
        lines_used: measured.len(),
        identifiable: result.identifiable,
        omega_estimate_rad_s: result.omega_estimate,
        omega_estimate_hz: result
            .omega_estimate
            .map(|w| w / (2.0 * std::f64::consts::PI)),
        residual_rms_hz: result.residual_rms,
        fit_tolerance_hz: result.fit_tolerance,
        bracket_rad_s: result.bracket,
        optima: result.optima,
    };
    let mut out = Outputs::default();
    out.add("inversion.json", to_json(&record)?);
    match result.omega_estimate {
        Some(w) => out.summary.push(format!("omega = {w:.16e} rad/s")),
        None if field.is_homogeneous() => {
            out.failure = Some(CliError::physics("unidentifiable: homogeneous field"))
        }
        None if result.optima > 1 => {
            out.failure = Some(CliError::physics(format!(
                "unidentifiable: {} distinct omega values fit the lines within the bracket",
                result.optima
            )))
        }
        None => {
            out.failure = Some(CliError::physics(
                "unidentifiable: line residual does not depend on omega across the bracket",
            ))
        }
    }
    Ok(out)
}

fn validate_command(s: &Scenario, unit: OmegaUnit) -> Result<Outputs, CliError> {
    let sys = s.system(unit)?;
    let field = s.field()?;
    require_stable(&sys, &field)?;
    let task = &s.validate;
    if task.levels == 0 {
        return Err(CliError::invalid("validate: levels must be positive"));
    }
    let sectors: Vec<SpinLevelIndex> = sys.spin.levels().collect();
    let parts = sectors
        .par_iter()
        .map(|&m| validate_sector(&sys, &field, m, task.levels, task.oracle_tolerance))
        .collect::<Result<Vec<_>, Error>>()?;
    let report = ValidationReport::assemble(parts, task.tolerance);
    let mut out = Outputs::default();
    out.add("validation.json", to_json(&report)?);
    out.summary.push(format!(
        "max relative error {:.3e} over {} levels",
        report.max_relative_error,
        report.levels.len()
    ));
    if !report.converged {
        out.failure = Some(CliError::numerical(
            "oracle did not converge in every sector; see validation.json",
        ));
    } else if !report.passed {
        out.failure = Some(CliError::numerical(format!(
            "validation failed: max relative error {:e} exceeds {:e}",
            report.max_relative_error, report.tolerance
        )));
    }
    Ok(out)
}

fn figure1_config(s: &Scenario, unit: Option<OmegaUnit>) -> Result<Figure1Config, CliError> {
    let d = Figure1Config::default();
    let unit = s.unit(unit)?;
    let t = &s.figure1;
    let spin = match s.spin {
        Some(v) => Spin::from_f64(v)?,
        None => d.spin,
    };
    Ok(Figure1Config {
        mass: s.mass.unwrap_or(d.mass),
        gamma: s.gamma.unwrap_or(d.gamma),
        spin,
        omega: s.omega.map(|w| unit.to_angular(w)).unwrap_or(d.omega),
        offset: s.offset.unwrap_or(d.offset),
        b0: s.b0.unwrap_or(d.b0),
        g: s.g.unwrap_or(d.g),
        gbar_fraction: t.gbar_fraction.unwrap_or(d.gbar_fraction),
        n_max: t.n_max.unwrap_or(d.n_max),
        points: t.points.unwrap_or(d.points),
        scan_steps: t.scan_steps.unwrap_or(d.scan_steps),
        line_level: t.line_level.unwrap_or(d.line_level),
    })
}

fn figure1_command(
    s: &Scenario,
    unit: Option<OmegaUnit>,
    format: Format,
) -> Result<Outputs, CliError> {
    let cfg = figure1_config(s, unit)?;
    let data = figure1(&cfg)?;

    let mut columns = vec!["gbar".to_string()];
    columns.extend(data.levels.iter().map(|l| format!("E_M={}_n={}", l.m, l.n)));
    let mut levels = Table::new(columns);
    for (g, row) in data.gbars.iter().zip(&data.energies) {
        let mut cells = vec![Cell::Float(*g)];
        cells.extend(row.iter().map(|&e| Cell::Float(e)));
        levels.push(cells);
    }

    let mut lines = Table::new([
        "gbar", "M_from", "n_from", "M_to", "n_to", "delta_e_J", "freq_hz",
    ]);
    for (g, set) in data.gbars.iter().zip(&data.lines) {
        let mut set = set.clone();
        set.sort_by_key(line_key);
        for l in &set {
            lines.push(vec![
                (*g).into(),
                l.from.m.into(),
                l.from.n.into(),
                l.to.m.into(),
                l.to.n.into(),
                l.delta_e.into(),
                l.frequency_hz.into(),
            ]);
        }
    }

    let mut out = Outputs::default();
    out.add(file("figure1_levels", format), levels.encode(format)?);
    out.add(file("figure1_lines", format), lines.encode(format)?);
    out.add(
        file("crossings", format),
        crossings_table(&data.scan.crossings).encode(format)?,
    );
    out.add("crossings_notes.json", to_json(&scan_notes(&data.scan))?);
    out.summary.push(format!(
        "{} level curves over {} gbar values up to {:.6e} T/m^2 (Gbar_crit {:.6e}); {} crossings",
        data.levels.len(),
        data.gbars.len(),
        data.gbars.last().copied().unwrap_or(0.0),
        data.gbar_crit,
        data.scan.crossings.len()
    ));
    Ok(out)
}
