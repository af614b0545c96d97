//! Scenario driver: runs a validated [`RunConfig`] and writes its artifacts.

use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;

use toml::{Table, Value};

use crate::analysis::{
    adiabaticity_check, annotate_dark_overlap, concurrence, dark_state, exposure_metrics,
    mixing_angle, realized_mixing_angle, target_fidelity,
};
use crate::config::{RunConfig, Scenario};
use crate::dynamics::{propagate, with_losses, SimulationTrace, StateVector};
use crate::error::{Error, SweepError};
use crate::model::{
    four_photon_detuning, rotating_to_effective, rwa_check, Basis, EffectiveModel, Frame,
    FullModel, PulseSchedule, G2G2_0, SUBSPACE_LABELS,
};
use crate::output::{self, create_artifact};
use crate::sweep::{find_operating_point, robustness_scan, scan, ScanSettings};

/// What a scenario produced.
#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub files: Vec<PathBuf>,
    /// Human-readable report, one item per line.
    pub report: String,
    /// False only when a `check` finds a failing condition.
    pub passed: bool,
}

pub fn run_scenario(cfg: &RunConfig) -> Result<ScenarioOutcome, Error> {
    match cfg.scenario {
        Scenario::Simulate => simulate(cfg),
        Scenario::Sweep => sweep(cfg),
        Scenario::Robustness => robustness(cfg),
        Scenario::DarkState => darkstate(cfg),
        Scenario::Check => check(cfg),
    }
}

/// Propagates the configured initial state, with losses when `kappa` or
/// `gamma` is nonzero. Superpositions involving `|g2,g2,0⟩` run in the full
/// model (rotating frame).
pub fn simulate_trace(cfg: &RunConfig) -> Result<SimulationTrace, Error> {
    let (g, p) = (&cfg.geometry, &cfg.physics);
    let psi0 = cfg.initial.vector();
    let opts = cfg.integrator_options();
    let lossy = p.kappa > 0.0 || p.gamma > 0.0;
    let mut trace = match (psi0.basis(), lossy) {
        (Basis::Subspace, false) => propagate(&EffectiveModel::new(g, p), &psi0, &opts)?,
        (Basis::Subspace, true) => {
            propagate(&with_losses(EffectiveModel::new(g, p), Basis::Subspace, p), &psi0, &opts)?
        }
        (Basis::Full, false) => propagate(&FullModel::new(g, p, Frame::Rotating), &psi0, &opts)?,
        (Basis::Full, true) => propagate(
            &with_losses(FullModel::new(g, p, Frame::Rotating), Basis::Full, p),
            &psi0,
            &opts,
        )?,
    };
    annotate_dark_overlap(&mut trace, &PulseSchedule::new(g, p));
    Ok(trace)
}

/// Final state with subspace amplitudes in the effective-Hamiltonian frame.
pub fn final_state_effective_frame(cfg: &RunConfig, trace: &SimulationTrace) -> StateVector {
    let psi = &trace.final_state;
    match psi.basis() {
        Basis::Subspace => psi.clone(),
        Basis::Full => {
            let t = *trace.times.last().expect("non-empty trace");
            let sub = rotating_to_effective(&cfg.geometry, t, psi.amplitudes().as_slice());
            let mut amps = psi.amplitudes().clone();
            for (j, &i) in Basis::subspace_in_full().iter().enumerate() {
                amps[i] = sub[j];
            }
            StateVector::from_raw(Basis::Full, amps)
        }
    }
}

fn f(x: f64) -> Value {
    Value::Float(x)
}

fn sub(entries: Vec<(&str, Value)>) -> Value {
    Value::Table(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn diagnostics(cfg: &RunConfig, summary: &mut Table, report: &mut Vec<String>) -> bool {
    let (g, p) = (&cfg.geometry, &cfg.physics);
    let det = four_photon_detuning(g, p);
    let rwa = rwa_check(g, p);
    let ad = adiabaticity_check(g, p);
    let mix = mixing_angle(g, p);
    summary.insert(
        "detuning".into(),
        sub(vec![
            ("delta", f(det.delta)),
            ("threshold", f(det.threshold)),
            ("guard_tripped", det.guard_tripped.into()),
        ]),
    );
    summary.insert(
        "rwa".into(),
        sub(vec![
            ("peak_coupling", f(rwa.peak_coupling)),
            ("slowest_optical_rate", f(rwa.slowest_optical_rate)),
            ("ratio", f(rwa.ratio)),
            ("valid", rwa.valid.into()),
        ]),
    );
    summary.insert(
        "adiabaticity".into(),
        sub(vec![
            ("t_laser", f(ad.t_laser)),
            ("t_cavity", f(ad.t_cavity)),
            ("product_laser", f(ad.product_laser)),
            ("product_cavity", f(ad.product_cavity)),
            ("pass", ad.pass.into()),
        ]),
    );
    summary.insert(
        "mixing_angle".into(),
        sub(vec![
            ("angle", f(mix.angle)),
            ("eval_time", f(mix.eval_time)),
            ("relative_drift", f(mix.relative_drift)),
            ("stationary", mix.stationary.into()),
        ]),
    );
    report.push(format!(
        "four-photon detuning: {:e} rad/s (guard {:e}) {}",
        det.delta,
        det.threshold,
        if det.guard_tripped { "TRIPPED" } else { "ok" }
    ));
    report.push(format!(
        "resonant approximation: coupling/optical = {:e} {}",
        rwa.ratio,
        if rwa.valid { "ok" } else { "VIOLATED" }
    ));
    report.push(format!(
        "adiabaticity: Omega0*T_L = {:.3}, G0*T_C = {:.3} {}",
        ad.product_laser,
        ad.product_cavity,
        if ad.pass { "pass" } else { "WARN" }
    ));
    report.push(format!(
        "mixing angle: {:.6} rad{}",
        mix.angle,
        if mix.stationary {
            String::new()
        } else {
            format!(" (warning: ratio not stationary, drift {:.3})", mix.relative_drift)
        }
    ));
    !det.guard_tripped && rwa.valid && ad.pass
}

fn simulate(cfg: &RunConfig) -> Result<ScenarioOutcome, Error> {
    let trace = simulate_trace(cfg)?;
    let psi = final_state_effective_frame(cfg, &trace);
    let mut summary = Table::new();
    let mut report = Vec::new();

    let mut pops = Table::new();
    for l in SUBSPACE_LABELS {
        pops.insert(l.tag(), f(psi.amplitude(l).norm_sqr()));
    }
    let norm2 = psi.norm_sqr();
    let in_s: f64 = SUBSPACE_LABELS.iter().map(|&l| psi.amplitude(l).norm_sqr()).sum();
    pops.insert("outside".into(), f((norm2 - in_s).max(0.0)));
    summary.insert("final_populations".into(), Value::Table(pops));

    diagnostics(cfg, &mut summary, &mut report);
    let theta = cfg.target_angle.unwrap_or_else(|| mixing_angle(&cfg.geometry, &cfg.physics).angle);
    let fidelity = target_fidelity(&psi, theta);
    let conc = concurrence(&psi);
    let exposure = exposure_metrics(&trace, &cfg.physics);
    let mut result = vec![
        ("norm2", f(norm2)),
        ("target_angle", f(theta)),
        ("fidelity", f(fidelity)),
        ("realized_mixing_angle", f(realized_mixing_angle(&psi))),
        ("concurrence", f(*conc.as_ref().unwrap_or(&f64::NAN))),
        ("excited_exposure", f(exposure.excited)),
        ("photon_exposure", f(exposure.photon)),
        ("max_norm_defect", f(trace.max_norm_defect())),
        ("steps", Value::Integer(trace.steps as i64)),
        ("refinements", Value::Integer(trace.refinements as i64)),
        ("achieved_tolerance", f(trace.achieved_tolerance)),
    ];
    if psi.basis() == Basis::Full {
        let c = psi.amplitude(G2G2_0);
        result.push(("g2g2_0_population", f(c.norm_sqr())));
    }
    summary.insert("result".into(), sub(result));

    report.insert(
        0,
        format!(
            "final populations: {}",
            SUBSPACE_LABELS
                .iter()
                .map(|&l| format!("{} {:.6}", l.tag(), psi.amplitude(l).norm_sqr()))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    report.push(format!("fidelity (target {theta:.6} rad): {fidelity:.6}"));
    match conc {
        Ok(c) => report.push(format!("concurrence: {c:.6}")),
        Err(e) => report.push(format!("concurrence: {e}")),
    }
    report.push(format!(
        "exposure: excited {:.4e}, photon {:.4e}; norm^2 {:.8}",
        exposure.excited, exposure.photon, norm2
    ));

    let files = vec![
        create_artifact(cfg, "trace.csv", |w| output::write_trace(w, cfg, &trace))?,
        create_artifact(cfg, "summary.toml", |w| output::write_summary(w, cfg, &summary))?,
    ];
    Ok(ScenarioOutcome { files, report: report.join("\n"), passed: true })
}

fn scan_settings(cfg: &RunConfig, default_angle: f64) -> ScanSettings {
    ScanSettings {
        integrator: cfg.integrator_options(),
        target_angle: cfg.target_angle.unwrap_or(default_angle),
    }
}

fn sweep(cfg: &RunConfig) -> Result<ScenarioOutcome, Error> {
    let settings = scan_settings(cfg, FRAC_PI_4);
    let s = &cfg.sweep;
    let result = scan(&cfg.geometry, &cfg.physics, s.z0, s.d, &settings)?;
    let grid = result.grid(s.metric);
    let metric_file = format!("grid_{}.csv", s.metric.name());
    let mut files = vec![
        create_artifact(cfg, &metric_file, |w| output::write_grid(w, cfg, &grid))?,
        create_artifact(cfg, "grid_z0.csv", |w| output::write_axis(w, cfg, "z0", &grid.z0_axis))?,
        create_artifact(cfg, "grid_d.csv", |w| output::write_axis(w, cfg, "d", &grid.d_axis))?,
    ];
    let mut summary = Table::new();
    let mut report = vec![format!(
        "scanned {}x{} cells, {} invalid",
        result.z0_axis.len(),
        result.d_axis.len(),
        result.invalid_cells()
    )];
    let op = find_operating_point(&result, s.objective_weight);
    summary.insert(
        "scan".into(),
        sub(vec![
            ("cells", Value::Integer(result.cells.len() as i64)),
            ("invalid_cells", Value::Integer(result.invalid_cells() as i64)),
            ("target_angle", f(settings.target_angle)),
        ]),
    );
    if let Ok(op) = &op {
        let mut pops = Table::new();
        for (l, pop) in op.populations() {
            pops.insert(l.tag(), f(pop));
        }
        summary.insert(
            "operating_point".into(),
            sub(vec![
                ("z0", f(op.z0)),
                ("d", f(op.d)),
                ("objective", f(op.objective)),
                ("intermediate_sum", f(op.outcome.intermediate_sum())),
                ("fidelity", f(op.outcome.fidelity)),
                ("concurrence", f(op.outcome.concurrence)),
                ("final_populations", Value::Table(pops)),
            ]),
        );
        report.push(format!(
            "operating point: z0 = {:e} m, d = {:e} m, objective {:.4e}, concurrence {:.4}",
            op.z0, op.d, op.objective, op.outcome.concurrence
        ));
    }
    files.push(create_artifact(cfg, "summary.toml", |w| output::write_summary(w, cfg, &summary))?);
    op?;
    Ok(ScenarioOutcome { files, report: report.join("\n"), passed: true })
}

fn robustness(cfg: &RunConfig) -> Result<ScenarioOutcome, Error> {
    let baseline_angle = mixing_angle(&cfg.geometry, &cfg.physics).angle;
    let settings = scan_settings(cfg, baseline_angle);
    let r = &cfg.robustness;
    let scan = robustness_scan(
        &cfg.geometry,
        &cfg.physics,
        r.parameter,
        r.relative_range,
        r.steps,
        &settings,
    )?;
    let min = scan.min_fidelity();
    let failed = scan.fidelity.iter().filter(|x| x.is_nan()).count();
    let mut summary = Table::new();
    summary.insert(
        "robustness".into(),
        sub(vec![
            ("parameter", r.parameter.name().into()),
            ("target_angle", f(settings.target_angle)),
            ("min_fidelity", f(min)),
            ("failed_points", Value::Integer(failed as i64)),
        ]),
    );
    let files = vec![
        create_artifact(cfg, "robustness.csv", |w| output::write_robustness(w, cfg, &scan))?,
        create_artifact(cfg, "summary.toml", |w| output::write_summary(w, cfg, &summary))?,
    ];
    let report = format!(
        "robustness in {}: {} points over +/-{}, min fidelity {:.6}, {} failed",
        r.parameter.name(),
        scan.offsets.len(),
        r.relative_range,
        min,
        failed
    );
    if failed == scan.offsets.len() {
        return Err(SweepError::NoViablePoint.into());
    }
    Ok(ScenarioOutcome { files, report, passed: true })
}

fn darkstate(cfg: &RunConfig) -> Result<ScenarioOutcome, Error> {
    let sched = PulseSchedule::new(&cfg.geometry, &cfg.physics);
    let s = sched.at(cfg.darkstate_time);
    let d = dark_state(&s)?;
    let mut comps = Table::new();
    let mut lines = vec![format!(
        "t = {:e} s: Omega1 = {:e}, G1 = {:e}, G2 = {:e}, Omega2 = {:e}",
        s.t, s.omega1, s.g1, s.g2, s.omega2
    )];
    for l in SUBSPACE_LABELS {
        let c = d.vector.amplitude(l).re;
        comps.insert(l.tag(), f(c));
        lines.push(format!("  {l}: {c:+.9}"));
    }
    lines.push(format!(
        "normalization C = {:e}, residual = {:e} (relative {:e})",
        d.normalization,
        d.residual,
        d.relative_residual()
    ));
    let mut summary = Table::new();
    summary.insert(
        "pulses".into(),
        sub(vec![
            ("t", f(s.t)),
            ("omega1", f(s.omega1)),
            ("g1", f(s.g1)),
            ("g2", f(s.g2)),
            ("omega2", f(s.omega2)),
            ("delta", f(s.delta)),
        ]),
    );
    summary.insert(
        "dark_state".into(),
        sub(vec![
            ("normalization", f(d.normalization)),
            ("residual", f(d.residual)),
            ("relative_residual", f(d.relative_residual())),
            ("components", Value::Table(comps)),
        ]),
    );
    let files =
        vec![create_artifact(cfg, "darkstate.toml", |w| output::write_summary(w, cfg, &summary))?];
    Ok(ScenarioOutcome { files, report: lines.join("\n"), passed: true })
}

fn check(cfg: &RunConfig) -> Result<ScenarioOutcome, Error> {
    let mut summary = Table::new();
    let mut report = Vec::new();
    let passed = diagnostics(cfg, &mut summary, &mut report);
    summary.insert("check".into(), sub(vec![("passed", passed.into())]));
    report.push(format!("check: {}", if passed { "PASS" } else { "FAIL" }));
    let files =
        vec![create_artifact(cfg, "check.toml", |w| output::write_summary(w, cfg, &summary))?];
    Ok(ScenarioOutcome { files, report: report.join("\n"), passed })
}
