use std::time::Instant;

use num_complex::Complex64;

use super::common::{bump_eigen, grid_for, packet, scaled, sim_params};
use super::config::ExperimentConfig;
use super::instability::instability_gamma;
use super::report::{RunReport, SeriesRow, Verdict};
use crate::evolution::{solve_volterra, LandauOracle, LinearBackground, Sample, Simulator, VolterraProblem};
use crate::error::Result;
use crate::penrose::{damping_shift_c0, penrose_margin_maxwellian, FrequencyScan};
use crate::spectral::{build_field, ModeSet, SpectralField, XiGrid};
use crate::wave::WaveOperatorHandle;

const LANDAU_T_END: f64 = 20.0;
const VOLTERRA_T_END: f64 = 40.0;
const RELATIVE_TOL: f64 = 1e-4;
/// Modes scanned for the Maxwellian margin that sizes the damping shift.
const MARGIN_MODES: usize = 8;

fn single_mode(grid: XiGrid, shape: impl Fn(f64) -> Complex64 + Sync) -> Result<SpectralField> {
    build_field(ModeSet::new(1)?, grid, |k, xi| if k == 0 { Complex64::new(0.0, 0.0) } else { shape(xi) })
}

fn relative_gap(samples: &[Sample], reference: impl Fn(usize, f64) -> Complex64) -> f64 {
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for (i, s) in samples.iter().enumerate() {
        let r = reference(i, s.t);
        diff = diff.max((s.rho[1] - r).norm());
        scale = scale.max(r.norm());
    }
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Collisionless linear run against the closed-form density, as a relative sup error.
pub fn landau_crosscheck(cfg: &ExperimentConfig, grid: XiGrid, shape: impl Fn(f64) -> Complex64 + Sync) -> Result<(f64, Vec<Sample>)> {
    let init = single_mode(grid, shape)?;
    let params = sim_params(cfg, &grid, 0.0, LANDAU_T_END, 0, 0)?.linear(LinearBackground::Maxwellian);
    let samples = Simulator::new(&init, params)?.run()?;
    let oracle = LandauOracle::new(WaveOperatorHandle::maxwellian(1, grid)?, init.row(1), 0.0)?;
    Ok((relative_gap(&samples, |_, t| oracle.density(t)), samples))
}

/// `C0` from the Maxwellian margin and the bump at `(M0 + 1, gamma)`.
pub fn damping_shift(gamma: f64) -> Result<f64> {
    let (set, _) = bump_eigen(gamma)?;
    let kappa0 = penrose_margin_maxwellian(ModeSet::new(MARGIN_MODES)?, FrequencyScan::default())?.certified();
    damping_shift_c0(set.mass, set.bump.sup_t_sigma, kappa0)
}

/// Linear run around the frozen bump background against the damped density equation.
pub fn volterra_crosscheck(
    cfg: &ExperimentConfig,
    nu: f64,
    gamma: f64,
    grid: XiGrid,
    shape: impl Fn(f64) -> Complex64 + Sync,
) -> Result<(f64, Vec<Sample>, Vec<Sample>)> {
    let (set, _) = bump_eigen(gamma)?;
    let c0 = damping_shift(gamma)?;
    let init = single_mode(grid, &shape)?;
    let params = sim_params(cfg, &grid, nu, VOLTERRA_T_END, 0, 0)?;
    let frozen = Simulator::new(&init, params.clone().linear(LinearBackground::Frozen(set.clone())))?.run()?;
    let end = frozen.last().map_or(0.0, |s| s.t);
    let substeps = 4;
    let mut problem = VolterraProblem::for_background(1, &set, nu, c0, params.dt / substeps as f64, end, &shape)?;
    solve_volterra(&mut problem)?;
    let density = problem.density().expect("solved above");
    let every = params.sample_every * substeps;
    let gap = relative_gap(&frozen, |i, _| density[(i * every).min(density.len() - 1)]);
    let maxwell = Simulator::new(&init, params.linear(LinearBackground::Maxwellian))?.run()?;
    Ok((gap, frozen, maxwell))
}

pub fn run_linear_crosscheck(cfg: &ExperimentConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(cfg.clone());
    let shape = |xi: f64| packet(xi, 0.0);

    let clock = Instant::now();
    let (landau, _) = landau_crosscheck(cfg, grid_for(cfg, 48.0, 3.0 / 64.0)?, shape)?;
    report.fitted_rates.insert("landau_relative_error".into(), landau);
    report.verdicts.push(scaled(
        Verdict::at_most("collisionless density vs closed form", landau, RELATIVE_TOL).timed(clock.elapsed().as_secs_f64()),
        cfg.tol_scale,
    ));

    let nu = cfg.nu_values()[0];
    let gamma = instability_gamma(nu, cfg.epsilon0);
    let clock = Instant::now();
    let (gap, frozen, maxwell) = volterra_crosscheck(cfg, nu, gamma, grid_for(cfg, 96.0, 3.0 / 64.0)?, shape)?;
    let elapsed = clock.elapsed().as_secs_f64();
    report.fitted_rates.insert("volterra_relative_error".into(), gap);
    report.verdicts.push(scaled(
        Verdict::at_most(format!("collisional density vs damped density equation (nu={nu:e})"), gap, RELATIVE_TOL).timed(elapsed),
        cfg.tol_scale,
    ));
    let spread = relative_gap(&maxwell, |i, _| frozen[i].rho[1]);
    report.fitted_rates.insert("background_contrast".into(), spread);
    report.verdicts.push(scaled(
        Verdict::at_least("maxwellian and bump backgrounds differ", spread, 1e-2).timed(elapsed),
        cfg.tol_scale,
    ));
    report.series = SeriesRow::from_samples(&frozen);
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}
