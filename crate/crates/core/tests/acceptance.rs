//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits nonzero on a failed criterion only when `VPFP_ACCEPTANCE_STRICT=1`, so that
//! the workspace test run records the outcome without aborting the remaining targets.

use std::time::Instant;

use num_complex::Complex64;
use vpfp::backgrounds::{default_bump, fe_hat_exact, BackgroundSet};
use vpfp::evolution::{SimParams, Simulator};
use vpfp::experiments::{
    bump_eigen, damping_shift, emit_report, instability_gamma, landau_crosscheck, packet, run_check_suite, run_ed_scaling,
    run_instability, run_threshold_sweep, volterra_crosscheck, ExperimentConfig, ExperimentKind, Verdict,
};
use vpfp::penrose::{
    continue_eigenvalue, m0_anchor, penrose_margin_collisional, penrose_margin_maxwellian, ContinuationOptions,
    FrequencyScan, Rectangle,
};
use vpfp::spectral::{build_field, ModeSet, XiGrid};
use vpfp::wave::{apply_inverse_wave, apply_wave, intertwining_residual, WaveOperatorHandle};

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

fn v_packet(grid: &XiGrid, centre: f64, width: f64, phase: f64) -> Vec<Complex64> {
    grid.v_nodes()
        .iter()
        .map(|&v| Complex64::from_polar((-(v - centre) * (v - centre) / (2.0 * width * width)).exp(), phase * v))
        .collect()
}

fn failures(verdicts: &[Verdict]) -> Vec<String> {
    verdicts.iter().filter(|v| !v.passed).map(Verdict::line).collect()
}

fn describe(verdicts: &[Verdict]) -> (bool, String) {
    let bad = failures(verdicts);
    let ok = bad.is_empty();
    let text = if ok { format!("{} verdicts passed", verdicts.len()) } else { bad.join("; ") };
    (ok, text)
}

fn wide_packet(xi: f64, k: i64) -> Complex64 {
    let s = xi / 10.0;
    Complex64::new(1.0, -0.5 * s) * (-s * s / 2.0).exp() * Complex64::from_polar(0.5f64.powi(k as i32 - 1), 0.3 * k as f64)
}

fn free_streaming() -> Outcome {
    let clock = Instant::now();
    let grid = XiGrid::covering(96.0, 3.0 / 64.0)?;
    let init = build_field(ModeSet::new(4)?, grid, |k, xi| match k {
        0 => Complex64::new(0.0, 0.0),
        k if k > 0 => wide_packet(xi, k),
        k => wide_packet(-xi, -k).conj(),
    })?;
    let samples = Simulator::new(&init, SimParams::new(&grid, 0.0, 20.0))?.run()?;
    let mut worst = 0.0f64;
    for k in 1..=4i64 {
        let mut diff = 0.0f64;
        let mut scale = 0.0f64;
        for s in &samples {
            let exact = wide_packet(k as f64 * s.t, k);
            diff = diff.max((s.rho[k as usize] - exact).norm());
            scale = scale.max(exact.norm());
        }
        worst = worst.max(diff / scale);
    }
    let seconds = clock.elapsed().as_secs_f64();
    Ok((worst <= 1e-8 && seconds < 10.0, format!("relative density error {worst:.3e} <= 1e-8 for k <= 4, t <= 20; {seconds:.1}s < 10s")))
}

fn homogeneous_collisions() -> Outcome {
    let grid = XiGrid::default_resolution();
    let set = BackgroundSet::new(1.0, 0.1, default_bump())?;
    let nu = 0.1;
    let init = build_field(ModeSet::new(1)?, grid, |k, xi| {
        Complex64::new(if k == 0 { fe_hat_exact(&set, nu, 0.0, xi) } else { 0.0 }, 0.0)
    })?;
    let mut sim = Simulator::new(&init, SimParams::new(&grid, nu, 5.0))?;
    let mut worst = 0.0f64;
    while sim.time() < 5.0 - 1e-9 {
        sim.step()?;
        for j in 0..grid.len() {
            worst = worst.max((sim.row(0)[j] - fe_hat_exact(&set, nu, sim.time(), grid.node(j))).norm());
        }
    }
    Ok((worst <= 1e-6, format!("sup error against the exact evolution {worst:.3e} <= 1e-6 over t in [0,5]")))
}

fn wave_round_trip() -> Outcome {
    let grid = XiGrid::default_resolution();
    let f = v_packet(&grid, 0.4, 1.3, 0.7);
    let mut trip = 0.0f64;
    let mut residual = 0.0f64;
    for k in 1..=4 {
        let h = WaveOperatorHandle::maxwellian(k, grid)?;
        let back = apply_inverse_wave(&h, &apply_wave(&h, &f)?)?;
        trip = trip.max(back.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
        residual = residual.max(intertwining_residual(&h, &f)?);
    }
    let at = |grid: XiGrid| -> Result<f64, Box<dyn std::error::Error>> {
        let f = v_packet(&grid, 0.4, 1.3, 0.7);
        let mut r = 0.0f64;
        for k in 1..=4 {
            r = r.max(intertwining_residual(&WaveOperatorHandle::maxwellian(k, grid)?, &f)?);
        }
        Ok(r)
    };
    let coarse = at(XiGrid::new(6.0, 256)?)?;
    let fine = at(XiGrid::new(12.0, 512)?)?;
    let gain = coarse / fine;
    let ok = trip <= 1e-8 && residual < 1e-6 && gain >= 1024.0;
    Ok((
        ok,
        format!("round trip {trip:.3e} <= 1e-8, intertwining {residual:.3e} < 1e-6, doubling gain {gain:.3e} >= 2^10"),
    ))
}

fn landau_damping() -> Outcome {
    let cfg = ExperimentConfig::new(ExperimentKind::LinearCrosscheck);
    let (gap, _) = landau_crosscheck(&cfg, XiGrid::covering(48.0, 3.0 / 64.0)?, |xi| packet(xi, 0.0))?;
    Ok((gap <= 1e-4, format!("relative density error {gap:.3e} <= 1e-4 over t in [0,20], k=1")))
}

fn dispersion_pipeline() -> Outcome {
    let bump = default_bump();
    let anchor_slope = bump.b1 * bump.b1 / (2.0 * bump.b2.abs());
    let (lo, hi) = (0.5 * anchor_slope, 2.0 * anchor_slope);
    let mut ok = true;
    let mut notes = Vec::new();
    for gamma in [0.05, 0.02, 0.01] {
        let clock = Instant::now();
        let m0 = m0_anchor(gamma, &bump)?;
        let rect = Rectangle::new(gamma, ContinuationOptions::default().delta, &bump)?;
        let near = continue_eigenvalue(gamma, m0 + rect.continuation_length(&bump)?, &bump, ContinuationOptions::default())?;
        let wide = continue_eigenvalue(gamma, m0 + 1.0, &bump, ContinuationOptions { delta: 1.5, ..Default::default() })?;
        let residual = near.path_residual(&bump)?.max(wide.path_residual(&bump)?);
        let anchored = near.ode_path[0].1 == Complex64::new(0.0, 0.0) && wide.ode_path[0].1 == Complex64::new(0.0, 0.0);
        let rates = [near.normalized_rate(), wide.normalized_rate()];
        let seconds = clock.elapsed().as_secs_f64();
        let cell = residual <= 1e-10 && anchored && rates.iter().all(|r| (lo..=hi).contains(r)) && seconds < 30.0;
        ok &= cell;
        notes.push(format!("gamma={gamma}: |Psi| {residual:.1e}, rates {:.3}/{:.3}, {seconds:.1}s", rates[0], rates[1]));
    }
    Ok((ok, format!("bracket [{lo:.3}, {hi:.3}]; {}", notes.join("; "))))
}

fn penrose_margins() -> Outcome {
    let modes = ModeSet::new(8)?;
    let kappa0 = penrose_margin_maxwellian(modes, FrequencyScan::default())?.certified();
    let refined = penrose_margin_maxwellian(modes, FrequencyScan::default().refined())?.certified();
    let drift = (refined - kappa0).abs() / kappa0;
    let nu: f64 = 1e-4;
    let gamma = instability_gamma(nu, 0.05);
    let (set, _) = bump_eigen(gamma)?;
    let c0 = damping_shift(gamma)?;
    let collisional = penrose_margin_collisional(&set, nu, c0, ModeSet::new(4)?, FrequencyScan::new(20.0, 401)?)?.certified();
    let ok = kappa0 > 0.0 && drift <= 0.01 && collisional >= kappa0 / 8.0;
    Ok((ok, format!("kappa0 {kappa0:.4}, refinement drift {drift:.1e}, collisional {collisional:.4} >= kappa0/8 at C0={c0}")))
}

fn volterra_equivalence() -> Outcome {
    let cfg = ExperimentConfig::new(ExperimentKind::LinearCrosscheck);
    let nu = 1e-4;
    let gamma = instability_gamma(nu, cfg.epsilon0);
    let (gap, _, _) = volterra_crosscheck(&cfg, nu, gamma, XiGrid::covering(96.0, 3.0 / 64.0)?, |xi| packet(xi, 0.0))?;
    Ok((gap <= 1e-4, format!("relative density gap {gap:.3e} <= 1e-4")))
}

fn enhanced_dissipation() -> Outcome {
    let clock = Instant::now();
    let report = run_ed_scaling(&ExperimentConfig::new(ExperimentKind::EdScaling))?;
    let seconds = clock.elapsed().as_secs_f64();
    let (ok, text) = describe(&report.verdicts);
    let slopes = format!(
        "nu-slope {:.3}, k-slope {:.3}",
        report.fitted_rates.get("slope_nu").copied().unwrap_or(f64::NAN),
        report.fitted_rates.get("slope_k").copied().unwrap_or(f64::NAN)
    );
    Ok((ok && seconds < 300.0, format!("{slopes}; {text}; {seconds:.1}s < 300s")))
}

fn instability_growth() -> Outcome {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Instability);
    cfg.nu = vec![1e-4];
    let report = run_instability(&cfg)?;
    Ok(describe(&report.verdicts))
}

fn threshold_sweep() -> Outcome {
    let cfg = ExperimentConfig::new(ExperimentKind::ThresholdSweep);
    let base = std::env::temp_dir().join(format!("vpfp-acceptance-{}", std::process::id()));
    let mut bytes = Vec::new();
    let mut verdicts = Vec::new();
    for run in 0..2 {
        let dir = base.join(format!("run{run}"));
        let report = run_threshold_sweep(&cfg)?;
        emit_report(&report, &dir)?;
        bytes.push(std::fs::read(dir.join("matrix.csv"))?);
        verdicts = report.verdicts;
    }
    std::fs::remove_dir_all(&base)?;
    let identical = bytes[0] == bytes[1];
    let (ok, text) = describe(&verdicts);
    Ok((ok && identical, format!("{text}; matrix.csv identical across runs: {identical}")))
}

fn invariant_suite() -> Outcome {
    let clock = Instant::now();
    let verdicts = run_check_suite(1.0)?;
    let seconds = clock.elapsed().as_secs_f64();
    let (ok, text) = describe(&verdicts);
    Ok((ok && seconds < 60.0, format!("{text}; {seconds:.1}s < 60s")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("free-streaming oracle", free_streaming),
        ("homogeneous collisional oracle", homogeneous_collisions),
        ("wave-operator round trip", wave_round_trip),
        ("linear Landau damping", landau_damping),
        ("dispersion pipeline", dispersion_pipeline),
        ("penrose margins", penrose_margins),
        ("density equation equivalence", volterra_equivalence),
        ("enhanced-dissipation scaling", enhanced_dissipation),
        ("instability growth", instability_growth),
        ("threshold dichotomy sweep", threshold_sweep),
        ("invariant suite", invariant_suite),
    ];
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let (ok, detail) = match run() {
            Ok(outcome) => outcome,
            Err(e) => (false, format!("error: {e}")),
        };
        passed += ok as usize;
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {detail} ({:.1}s)", i + 1, clock.elapsed().as_secs_f64());
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    let strict = std::env::var("VPFP_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && passed < criteria.len() {
        std::process::exit(1);
    }
}
