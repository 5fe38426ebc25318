//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p parabolic-mr-cli --test acceptance`. Exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use common::{relative_error, rng, scenarios, Scenario, ScenarioShape};
use parabolic_mr::oracle::validate_sector;
use parabolic_mr::spectroscopy::{
    identify_frequency, model_lines_hz, regime_weights, transition_lines, SelectionRule,
};
use parabolic_mr::spectrum::{
    critical_gbar, eigenfunction_center, energy_decomposition, energy_level,
    scaled_spin_number,
};
use parabolic_mr::units::{ELECTRON_GAMMA, ELECTRON_MASS, HBAR};
use parabolic_mr::{Error, FieldProfile, LevelLabel, Spin, SpinLevelIndex, SpinSystem};
use rand::Rng;

const SCENARIO_SEED: u64 = 20_240_601;
const SCENARIO_COUNT: usize = 200;
/// Levels n = 0..4 per sector.
const LEVELS: usize = 5;
const ORACLE_TOLERANCE: f64 = 1e-10;

const ENERGY_TOL: f64 = 1e-8;
const CENTER_TOL: f64 = 1e-6;
const DECOMPOSITION_TOL: f64 = 1e-12;
const CRITICAL_SCALING_TOL: f64 = 1e-12;
const ROUND_TRIP_TOL: f64 = 1e-6;
const ROUND_TRIP_COUNT: usize = 100;
const CROSSING_TOL: f64 = 1e-10;
const REDUCTION_TOL: f64 = 1e-12;
const REDUCTION_PROFILES: usize = 50;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn check(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_parabolic-mr")
}

fn run_cli(args: &[&str], config: Option<&Path>, out: &Path, threads: &str) -> (i32, String) {
    let mut cmd = Command::new(binary());
    cmd.args(args).arg("--out").arg(out);
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    cmd.env("PARABOLIC_MR_THREADS", threads);
    let output = cmd.output().expect("cli runs");
    let text = format!(
        "{}{}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    (output.status.code().unwrap_or(-1), text)
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).expect("csv exists");
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

/// Criteria 1 and 2 share the oracle solves.
struct OracleRun {
    worst_energy: f64,
    all_converged: bool,
    worst_center: f64,
    /// Smallest |numeric shift| / |hbar^2 shift| over displaced sectors.
    min_h2_ratio: f64,
    h2_matches: usize,
    sectors: usize,
}

fn oracle_run(cases: &[Scenario]) -> Result<OracleRun, Error> {
    let mut run = OracleRun {
        worst_energy: 0.0,
        all_converged: true,
        worst_center: 0.0,
        min_h2_ratio: f64::INFINITY,
        h2_matches: 0,
        sectors: 0,
    };
    for sc in cases {
        let (sys, field) = (&sc.system, &sc.field);
        for m in sys.spin.levels() {
            let v = validate_sector(sys, field, m, LEVELS, ORACLE_TOLERANCE)?;
            run.sectors += 1;
            run.all_converged &= v.report.converged;
            for l in &v.levels {
                run.worst_energy = run.worst_energy.max(l.relative_error);
            }
            run.worst_center = run.worst_center.max(v.center.relative_error);

            // the same displacement with hbar squared instead of hbar
            let single = eigenfunction_center(sys, field, m)? - sys.offset;
            if single != 0.0 {
                let squared = single * HBAR;
                let numeric = v.center.numeric_m - sys.offset;
                run.min_h2_ratio = run.min_h2_ratio.min((numeric / squared).abs());
                if relative_error(v.center.numeric_m, sys.offset + squared) < CENTER_TOL
                    && relative_error(numeric, squared) < CENTER_TOL
                {
                    run.h2_matches += 1;
                }
            }
        }
    }
    Ok(run)
}

fn criterion_1(run: &OracleRun) -> Outcome {
    Outcome::check(
        run.all_converged && run.worst_energy < ENERGY_TOL,
        format!(
            "{SCENARIO_COUNT} scenarios, {} sectors, n < {LEVELS}: max relative error {:.3e} (< {ENERGY_TOL:e}), all converged: {}",
            run.sectors, run.worst_energy, run.all_converged
        ),
    )
}

fn criterion_2(run: &OracleRun) -> Outcome {
    let orders = run.min_h2_ratio.log10();
    Outcome::check(
        run.worst_center < CENTER_TOL && run.h2_matches == 0 && orders > 30.0,
        format!(
            "max relative centroid error {:.3e} (< {CENTER_TOL:e}); hbar^2 variant matched {} sectors and misses the shift by >= 10^{orders:.1}",
            run.worst_center, run.h2_matches
        ),
    )
}

fn criterion_3(cases: &[Scenario]) -> Result<Outcome, Error> {
    let mut worst_total = 0.0f64;
    let mut worst_collapse = 0.0f64;
    let mut compared = 0;
    for sc in cases {
        if sc.field.gbar == 0.0 {
            continue;
        }
        let field = FieldProfile { b0: 0.0, ..sc.field };
        let centred = SpinSystem {
            offset: 0.0,
            ..sc.system
        };
        for m in sc.system.spin.levels() {
            for n in 0..LEVELS as u32 {
                let d = energy_decomposition(&sc.system, &field, m, n)?;
                let e = energy_level(&sc.system, &field, m, n)?;
                worst_total = worst_total.max(relative_error(d.total, e));
                compared += 1;

                let d0 = energy_decomposition(&centred, &field, m, n)?;
                let w = regime_weights(&centred, &field, m, n)?;
                let quantum = w.quantum_weight * HBAR * centred.omega * (n as f64 + 0.5);
                let classical = -w.classical_weight * w.classical_energy_scale;
                let e0 = energy_level(&centred, &field, m, n)?;
                for err in [
                    relative_error(d0.quantum_term, quantum),
                    relative_error(d0.classical_g_term, classical),
                    relative_error(d0.total, e0),
                    d0.classical_a_term.abs() / e0.abs(),
                    d0.classical_mixed_term.abs() / e0.abs(),
                ] {
                    worst_collapse = worst_collapse.max(err);
                }
            }
        }
    }
    Ok(Outcome::check(
        worst_total < DECOMPOSITION_TOL && worst_collapse < DECOMPOSITION_TOL,
        format!(
            "{compared} levels with b0 = 0: decomposition vs spectrum {worst_total:.3e}, a = 0 collapse term by term {worst_collapse:.3e} (< {DECOMPOSITION_TOL:e})"
        ),
    ))
}

fn criterion_4(cases: &[Scenario]) -> Result<Outcome, Error> {
    let mut mismatches = 0;
    let mut checks = 0;
    let mut boundary_ok = true;
    let mut worst_scaling = 0.0f64;
    let factors = [
        0.5,
        0.9,
        0.999,
        1.0 - 1e-12,
        1.0,
        1.0 + 1e-12,
        1.001,
        1.5,
        3.0,
    ];
    for sc in cases {
        let sys = &sc.system;
        let crit = critical_gbar(sys);
        for f in factors {
            for sign in [1.0, -1.0] {
                let field = sc.field.with_gbar(sign * f * crit);
                for m in sys.spin.levels() {
                    let mbar = scaled_spin_number(sys, &field, m)?;
                    let errs = matches!(
                        energy_level(sys, &field, m, 0),
                        Err(Error::Dissociation { .. })
                    );
                    checks += 1;
                    if errs != (mbar >= 1.0) {
                        mismatches += 1;
                    }
                }
            }
        }
        // exactly at the boundary the exposed outer sublevel has Mbar = 1
        let top = SpinLevelIndex::from_twice(sys.spin.twice() as i32);
        let exposed = if sys.gamma > 0.0 { top } else { top.negated() };
        let at = sc.field.with_gbar(crit);
        boundary_ok &= scaled_spin_number(sys, &at, exposed)? == 1.0
            && energy_level(sys, &at, exposed, 0).is_err()
            && energy_level(sys, &at, exposed.negated(), 0).is_ok();

        let doubled = sys.with_omega(2.0 * sys.omega);
        worst_scaling = worst_scaling.max(relative_error(critical_gbar(&doubled), 4.0 * crit));
    }
    Ok(Outcome::check(
        mismatches == 0 && boundary_ok && worst_scaling < CRITICAL_SCALING_TOL,
        format!(
            "{checks} (Gbar, M) probes: error iff Mbar >= 1 violated {mismatches} times; exact boundary behaves: {boundary_ok}; Gbar_crit(2 Omega) / 4 Gbar_crit(Omega) - 1 = {worst_scaling:.3e}"
        ),
    ))
}

fn criterion_5() -> Result<Outcome, Error> {
    let mut r = rng(5);
    let mut identical = true;
    let mut refused = true;
    let mut systems = 0;
    for _ in 0..20 {
        let spin = Spin::from_twice(r.random_range(1..=5));
        let gamma = if r.random_bool(0.5) { 1.0 } else { -1.0 } * 10f64.powf(r.random_range(7.0..11.3));
        let mass = 10f64.powf(r.random_range(-27.0..-26.0));
        let b0 = r.random_range(1e-4..1.0);
        let base = SpinSystem::new(mass, gamma, spin, 1e3, r.random_range(-1e-8..1e-8))
            .expect("valid system");
        let field = FieldProfile::new(b0, 0.0, 0.0)?;
        let n = r.random_range(0..5);
        let reference = transition_lines(&base, &field, n, SelectionRule::DeltaM1FixedN)?;
        // two decades, 41 log-spaced frequencies
        for k in 0..=40 {
            let omega = 1e3 * 10f64.powf(k as f64 / 20.0);
            let lines = transition_lines(&base.with_omega(omega), &field, n, SelectionRule::DeltaM1FixedN)?;
            identical &= lines.len() == reference.len()
                && lines.iter().zip(&reference).all(|(a, b)| {
                    a.frequency_hz.to_bits() == b.frequency_hz.to_bits()
                        && a.delta_e.to_bits() == b.delta_e.to_bits()
                        && a.from == b.from
                        && a.to == b.to
                });
        }
        let measured = model_lines_hz(&base.with_omega(1e4), &field, n)?;
        let result = identify_frequency(&measured, &base, &field, n, (1e3, 1e5))?;
        refused &= !result.identifiable && result.omega_estimate.is_none();
        systems += 1;
    }
    Ok(Outcome::check(
        identical && refused,
        format!(
            "{systems} systems over Omega in [1e3, 1e5]: line sets bit-identical: {identical}; identifiable = false: {refused}"
        ),
    ))
}

fn round_trip_shape() -> ScenarioShape {
    ScenarioShape {
        max_mbar: 0.9,
        offset: (0.15, 0.25),
        displacement: 0.5,
        zeeman: Some(0.5),
        // one spin-1/2 line can be fitted by two frequencies; S >= 1 gives
        // at least two lines
        spins_twice: &[2, 3, 5],
    }
}

fn criterion_6(dir: &Path) -> Result<Outcome, Error> {
    let mut r = rng(6);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let cases = scenarios(66, ROUND_TRIP_COUNT, round_trip_shape());
    for (i, sc) in cases.iter().enumerate() {
        let truth = sc.system.omega;
        let n = r.random_range(0..5);
        let lines = model_lines_hz(&sc.system, &sc.field, n)?;
        let bracket = (
            truth / r.random_range(2.0..10.0),
            truth * r.random_range(2.0..10.0),
        );
        let template = sc.system.with_omega(1.0);
        match identify_frequency(&lines, &template, &sc.field, n, bracket) {
            Ok(res) if res.identifiable => {
                let err = relative_error(res.omega_estimate.unwrap(), truth);
                worst = worst.max(err);
                if err >= ROUND_TRIP_TOL {
                    failures.push(format!("#{i} error {err:.2e}"));
                }
            }
            Ok(_) => failures.push(format!("#{i} not identifiable")),
            Err(e) => failures.push(format!("#{i} {e}")),
        }
    }

    // two species in the same field, each fitted from its own lines
    let field = FieldProfile::new(2e-3, 0.8, 40.0)?;
    let species = [
        SpinSystem::new(3.2e-27, 1.9e9, Spin::from_twice(2), 1e5, 3e-9).unwrap(),
        SpinSystem::new(7.5e-27, -6.1e8, Spin::from_twice(3), 3.7e5, -2e-9).unwrap(),
    ];
    let mut species_errors = Vec::new();
    for sp in &species {
        let lines = model_lines_hz(sp, &field, 1)?;
        let res = identify_frequency(&lines, &sp.with_omega(1.0), &field, 1, (2e4, 2e6))?;
        species_errors.push(
            res.omega_estimate
                .map_or(f64::INFINITY, |w| relative_error(w, sp.omega)),
        );
    }

    // and once through the CLI: lines.csv -> invert
    let config = dir.join("species.toml");
    std::fs::write(
        &config,
        "mass = 3.2e-27\ngamma = 1.9e9\nspin = 1\nomega = 1e5\noffset = 3e-9\n\
         b0 = 2e-3\ng = 0.8\ngbar = 40.0\n\
         [lines]\nn = 1\n\
         [invert]\nn = 1\nbracket = [2e4, 2e6]\nlines_file = \"out/lines.csv\"\n",
    )
    .unwrap();
    let out = dir.join("out");
    let (c1, _) = run_cli(&["lines"], Some(&config), &out, "1");
    let (c2, text) = run_cli(&["invert"], Some(&config), &out, "1");
    let cli_error = if c1 == 0 && c2 == 0 {
        let json: serde_json::Value =
            serde_json::from_slice(&std::fs::read(out.join("inversion.json")).unwrap()).unwrap();
        json["omega_estimate_rad_s"]
            .as_f64()
            .map_or(f64::INFINITY, |w| relative_error(w, 1e5))
    } else {
        failures.push(format!("cli exit {c1}/{c2}: {}", text.trim()));
        f64::INFINITY
    };

    let species_ok = species_errors.iter().all(|&e| e < ROUND_TRIP_TOL);
    let mut detail = format!(
        "{ROUND_TRIP_COUNT} scenarios: max relative error {worst:.3e} (< {ROUND_TRIP_TOL:e}); two species {:.3e}, {:.3e}; via CLI line list {cli_error:.3e}",
        species_errors[0], species_errors[1]
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; failures: {}", failures.join(", ")));
    }
    Ok(Outcome::check(
        failures.is_empty() && species_ok && cli_error < ROUND_TRIP_TOL,
        detail,
    ))
}

fn parse(s: &str) -> f64 {
    s.parse().expect("numeric cell")
}

fn criterion_7(dir: &Path) -> Result<Outcome, Error> {
    let config = dir.join("figure1.toml");
    std::fs::write(
        &config,
        format!(
            "mass = {ELECTRON_MASS:e}\ngamma = {ELECTRON_GAMMA:e}\nspin = 1.5\nomega = 1e5\noffset = 1e-4\n\
             b0 = 0.0\ng = -0.003\n[figure1]\ngbar_fraction = 0.999\nn_max = 3\n"
        ),
    )
    .unwrap();
    let out = dir.join("figure1");
    let (code, text) = run_cli(&["figure1"], Some(&config), &out, "1");
    if code != 0 {
        return Ok(Outcome::check(false, format!("figure1 exited {code}: {}", text.trim())));
    }
    let sys = SpinSystem::new(ELECTRON_MASS, ELECTRON_GAMMA, Spin::from_twice(3), 1e5, 1e-4).unwrap();
    let base = FieldProfile::new(0.0, -0.003, 0.0)?;
    let crit = critical_gbar(&sys);

    let (header, rows) = read_csv(&out.join("figure1_levels.csv"));
    let gbars: Vec<f64> = rows.iter().map(|r| parse(&r[0])).collect();
    let in_range = gbars.iter().all(|&g| (0.0..=0.999 * crit).contains(&g));
    let mut monotone = 0;
    let mut single_bend = 0;
    for j in 1..header.len() {
        let col: Vec<f64> = rows.iter().map(|r| parse(&r[j])).collect();
        let d: Vec<f64> = col.windows(2).map(|w| w[1] - w[0]).collect();
        if d.iter().all(|&x| x > 0.0) || d.iter().all(|&x| x < 0.0) {
            monotone += 1;
        }
        let d2: Vec<f64> = d.windows(2).map(|w| w[1] - w[0]).collect();
        if d2.iter().all(|&x| x < 0.0) || d2.iter().all(|&x| x > 0.0) {
            single_bend += 1;
        }
    }
    let curves = header.len() - 1;

    let (_, crossings) = read_csv(&out.join("crossings.csv"));
    let mut worst = 0.0f64;
    for c in &crossings {
        let field = base.with_gbar(parse(&c[0]));
        let a = LevelLabel::new(SpinLevelIndex::from_f64(parse(&c[1]))?, c[2].parse().unwrap());
        let b = LevelLabel::new(SpinLevelIndex::from_f64(parse(&c[3]))?, c[4].parse().unwrap());
        let ea = energy_level(&sys, &field, a.m, a.n)?;
        let eb = energy_level(&sys, &field, b.m, b.n)?;
        worst = worst.max((ea - eb).abs() / ea.abs().max(eb.abs()));
    }
    Ok(Outcome::check(
        in_range
            && curves == 16
            && monotone == curves
            && single_bend == curves
            && !crossings.is_empty()
            && worst < CROSSING_TOL,
        format!(
            "{curves} curves over {} Gbar values in [0, 0.999 Gbar_crit]: {monotone} monotone, {single_bend} with one-signed curvature; {} crossings, max |dE|/|E| {worst:.3e} (< {CROSSING_TOL:e})",
            gbars.len(),
            crossings.len()
        ),
    ))
}

fn criterion_8() -> Result<Outcome, Error> {
    let mut r = rng(8);
    let mut worst_zero = 0.0f64;
    let mut worst_ladder = 0.0f64;
    for i in 0..REDUCTION_PROFILES {
        let spin = Spin::from_twice(2 * r.random_range(1..=3));
        let gamma = if r.random_bool(0.5) { 1.0 } else { -1.0 } * 10f64.powf(r.random_range(7.0..11.3));
        let mass = 10f64.powf(r.random_range(-27.0..-26.0));
        let omega = 10f64.powf(r.random_range(3.0..6.0));
        let lambda = (HBAR / (mass * omega)).sqrt();
        let sys = SpinSystem::new(mass, gamma, spin, omega, r.random_range(-0.3..0.3) * lambda)
            .expect("valid system");
        let crit = critical_gbar(&sys);
        let field = FieldProfile::new(
            r.random_range(-1.0..1.0),
            r.random_range(-1e3..1e3),
            r.random_range(-0.95..0.95) * crit,
        )?;
        for n in 0..10 {
            let e = energy_level(&sys, &field, SpinLevelIndex::ZERO, n)?;
            worst_zero = worst_zero.max(relative_error(e, HBAR * omega * (n as f64 + 0.5)));
        }

        // uniform field: exact Zeeman ladder on the oscillator
        let uniform = FieldProfile::new(field.b0, 0.0, 0.0)?;
        let sys = if i % 2 == 0 {
            sys
        } else {
            SpinSystem::new(mass, gamma, Spin::from_twice(2 * r.random_range(0..3) + 1), omega, sys.offset)
                .expect("valid system")
        };
        for m in sys.spin.levels() {
            for n in 0..10 {
                let e = energy_level(&sys, &uniform, m, n)?;
                let oscillator = HBAR * omega * (n as f64 + 0.5);
                let zeeman = -gamma * uniform.b0 * HBAR * m.value();
                let scale = oscillator.abs() + zeeman.abs();
                worst_ladder = worst_ladder.max((e - (oscillator + zeeman)).abs() / scale);
            }
        }
    }
    Ok(Outcome::check(
        worst_zero < REDUCTION_TOL && worst_ladder < REDUCTION_TOL,
        format!(
            "{REDUCTION_PROFILES} random profiles: M = 0 vs hbar Omega (n + 1/2) {worst_zero:.3e}; G = Gbar = 0 vs Zeeman ladder {worst_ladder:.3e} (< {REDUCTION_TOL:e})"
        ),
    ))
}

fn files_in(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let Ok(entries) = std::fs::read_dir(dir) else {
        return Vec::new();
    };
    let mut files: Vec<_> = entries
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn criterion_9(dir: &Path) -> Outcome {
    let config = dir.join("determinism.toml");
    let omega = 2.0 * std::f64::consts::PI * 2e4;
    let measured = SpinSystem::new(4e-27, -2.5e9, Spin::from_twice(3), omega, 2e-9)
        .and_then(|sys| model_lines_hz(&sys, &FieldProfile::new(1e-3, 0.3, 50.0)?, 0));
    let measured = match measured {
        Ok(m) => m.iter().map(|f| format!("{f:e}")).collect::<Vec<_>>().join(", "),
        Err(e) => return Outcome::check(false, format!("model lines: {e}")),
    };
    std::fs::write(
        &config,
        format!(
            "mass = 4e-27\ngamma = -2.5e9\nspin = 1.5\nomega = 2e4\nomega_unit = \"Hz\"\noffset = 2e-9\n\
             b0 = 1e-3\ng = 0.3\ngbar = 50.0\n\
             [crossings]\nn_max = 2\nsteps = 500\n\
             [lines]\nrule = \"all_pairs_within\"\nn_max = 1\n\
             [invert]\nmeasured_hz = [{measured}]\nbracket = [1e3, 1e6]\n\
             [validate]\nlevels = 3\n"
        ),
    )
    .unwrap();
    let runs: &[(&[&str], bool)] = &[
        (&["spectrum"], true),
        (&["spectrum", "--format", "json"], true),
        (&["lines"], true),
        (&["crossings"], true),
        (&["invert"], true),
        (&["validate"], true),
        (&["figure1"], false),
        (&["figure1", "--format", "json"], false),
    ];
    let mut identical = 0;
    let mut problems = Vec::new();
    let mut files = 0;
    for (k, (args, with_config)) in runs.iter().enumerate() {
        let cfg = with_config.then_some(config.as_path());
        let a = dir.join(format!("det-{k}-a"));
        let b = dir.join(format!("det-{k}-b"));
        let (ca, ta) = run_cli(args, cfg, &a, "1");
        let (cb, tb) = run_cli(args, cfg, &b, "4");
        let (fa, fb) = (files_in(&a), files_in(&b));
        if ca != cb || ta != tb || fa.is_empty() {
            problems.push(format!("{args:?} exit {ca}/{cb}"));
        } else if fa == fb {
            identical += 1;
            files += fa.len();
        } else {
            problems.push(format!("{args:?} differs"));
        }
    }
    let mut detail = format!(
        "{identical}/{} command runs byte-identical across repeats (1 vs 4 worker threads), {files} files compared",
        runs.len()
    );
    if !problems.is_empty() {
        detail.push_str(&format!("; problems: {}", problems.join(", ")));
    }
    Outcome::check(problems.is_empty(), detail)
}

fn scratch_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn report(number: usize, name: &str, start: Instant, outcome: Result<Outcome, Error>) -> bool {
    let outcome = outcome.unwrap_or_else(|e| Outcome::check(false, format!("error: {e}")));
    println!(
        "{} criterion {number}: {name}: {} [{:.1} s]",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.detail,
        start.elapsed().as_secs_f64()
    );
    outcome.passed
}

fn main() {
    let dir = scratch_dir();
    let cases = scenarios(SCENARIO_SEED, SCENARIO_COUNT, ScenarioShape::default());
    let mut passed = Vec::new();

    let t = Instant::now();
    let run = oracle_run(&cases);
    match run {
        Ok(run) => {
            passed.push(report(1, "closed-form energies vs oracle", t, Ok(criterion_1(&run))));
            passed.push(report(2, "eigenfunction centre (single hbar)", t, Ok(criterion_2(&run))));
        }
        Err(e) => {
            passed.push(report(1, "closed-form energies vs oracle", t, Err(e.clone())));
            passed.push(report(2, "eigenfunction centre (single hbar)", t, Err(e)));
        }
    }
    let t = Instant::now();
    passed.push(report(3, "energy decomposition and a = 0 collapse", t, criterion_3(&cases)));
    let t = Instant::now();
    passed.push(report(4, "dissociation boundary", t, criterion_4(&cases)));
    let t = Instant::now();
    passed.push(report(5, "homogeneous field carries no frequency", t, criterion_5()));
    let t = Instant::now();
    passed.push(report(6, "frequency identification round trip", t, criterion_6(&dir)));
    let t = Instant::now();
    passed.push(report(7, "level structure versus Gbar (figure1)", t, criterion_7(&dir)));
    let t = Instant::now();
    passed.push(report(8, "zero-spin-projection and Zeeman reductions", t, criterion_8()));
    let t = Instant::now();
    passed.push(report(9, "deterministic CLI output", t, Ok(criterion_9(&dir))));

    let failed = passed.iter().filter(|p| !**p).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        passed.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
