use std::time::Instant;

use super::common::{grid_for, mean_free, packet, scaled, seed_phase, sim_params, total_weighted_norm};
use super::config::ExperimentConfig;
use super::report::{RunReport, SeriesRow, Verdict};
use crate::error::Result;
use crate::evolution::{linear_fit, LinearBackground, Sample, Simulator};
use crate::spectral::{build_field, ModeSet, SpectralField, XiGrid};

const K_MAX: usize = 4;
const T_END: f64 = 40.0;
const LEVELS: (u32, u32) = (2, 4);
/// Largest admissible fitted constant in the size bounds.
const SIZE_CONSTANT: f64 = 10.0;
const POINTWISE_NU: f64 = 1e-2;
const POINTWISE_POWER: i32 = 2;

/// Packets in every mode, scaled so that `||<v>^m g|| = epsilon nu^(1/2)`.
pub fn stability_initial_data(grid: XiGrid, k_max: usize, size: f64, m: u32, seed: u64) -> Result<SpectralField> {
    let mut field = build_field(ModeSet::new(k_max)?, grid, |k, xi| {
        if k == 0 {
            0.5 * mean_free(xi)
        } else {
            packet(xi, seed_phase(seed, k) * k.signum() as f64) * 0.5f64.powi(k.unsigned_abs() as i32 - 1)
        }
    })?;
    let norm = total_weighted_norm(&field, m);
    field.scale(if norm > 0.0 { size / norm } else { 0.0 });
    Ok(field)
}

/// `sqrt(integral sum_k |k|^3 |E_k|^2 dt)` by the trapezoid rule, both signs of `k`.
pub fn field_space_time_norm(samples: &[Sample]) -> f64 {
    let density = |s: &Sample| -> f64 {
        2.0 * s.field.iter().enumerate().skip(1).map(|(k, e)| (k as f64).powi(3) * e * e).sum::<f64>()
    };
    let mut acc = 0.0;
    for w in samples.windows(2) {
        acc += 0.5 * (w[1].t - w[0].t) * (density(&w[0]) + density(&w[1]));
    }
    acc.sqrt()
}

/// Full-state weighted norm at a sample, from the per-mode norms.
fn sample_norm(s: &Sample) -> f64 {
    (s.weighted_norms[0].powi(2) + s.nonzero_norm().powi(2)).sqrt()
}

/// Decay exponent of the nonzero modes against `<nu^(1/3) t>`.
pub fn fitted_envelope_exponent(samples: &[Sample], nu: f64) -> Result<f64> {
    let n0 = samples[0].nonzero_norm();
    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.nonzero_norm() > 0.0)
        .map(|s| (0.5 * (1.0 + (nu.cbrt() * s.t).powi(2)).ln(), (s.nonzero_norm() / n0).ln()))
        .collect();
    Ok(-linear_fit(&points)?.0)
}

pub fn run_stability(cfg: &ExperimentConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(cfg.clone());
    let grid = grid_for(cfg, 48.0, 3.0 / 64.0)?;
    let k_max = cfg.sim.k_max.unwrap_or(K_MAX);
    for (i, &nu) in cfg.nu_values().iter().enumerate() {
        let clock = Instant::now();
        let mut params = sim_params(cfg, &grid, nu, T_END, LEVELS.0, LEVELS.1)?.nonlinear();
        params.background = LinearBackground::Maxwellian;
        params.record_energy = true;
        let (s, m) = (params.energy.s, params.energy.m);
        let size = cfg.epsilon * nu.sqrt();
        let init = stability_initial_data(grid, k_max, size, m, cfg.seed)?;
        let samples = Simulator::new(&init, params)?.run()?;
        if i == 0 {
            report.series = SeriesRow::from_samples(&samples);
        }
        let elapsed = clock.elapsed().as_secs_f64();
        let tag = format!("nu={nu:e}");
        let sup = samples.iter().map(sample_norm).fold(0.0, f64::max);
        let field = field_space_time_norm(&samples);
        if size == 0.0 {
            report.verdicts.push(Verdict::holds(format!("zero data stays zero ({tag})"), sup == 0.0 && field == 0.0));
            continue;
        }
        let c_sup = sup / size;
        let c_field = field / size;
        let exponent = fitted_envelope_exponent(&samples, nu)?;
        report.fitted_rates.insert(format!("size_constant@{tag}"), c_sup);
        report.fitted_rates.insert(format!("field_constant@{tag}"), c_field);
        report.fitted_rates.insert(format!("envelope_exponent@{tag}"), exponent);
        if let (Some(e0), Some(_)) = (samples[0].energy, samples.last().and_then(|x| x.energy)) {
            let peak = samples.iter().filter_map(|x| x.energy).map(|e| e.0).fold(0.0, f64::max);
            report.fitted_rates.insert(format!("energy_peak_ratio@{tag}"), peak / e0.0);
        }
        let checks = [
            Verdict::at_most(format!("weighted norm constant ({tag})"), c_sup, SIZE_CONSTANT),
            Verdict::at_most(format!("field space-time constant ({tag})"), c_field, SIZE_CONSTANT),
            Verdict::at_least(format!("nonzero-mode envelope exponent ({tag})"), exponent, 0.8 * s as f64),
        ];
        for v in checks {
            report.verdicts.push(scaled(v.timed(elapsed), cfg.tol_scale));
        }
    }
    if cfg.epsilon > 0.0 {
        report.verdicts.push(scaled(pointwise_damping(cfg, k_max)?, cfg.tol_scale));
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

/// `sup_{t >= 1/nu} <t>^N max_k |E_k(t)| / (epsilon nu^(1/2))` at `nu = 1e-2`, the only desk-reachable horizon.
fn pointwise_damping(cfg: &ExperimentConfig, k_max: usize) -> Result<Verdict> {
    let clock = Instant::now();
    let nu = POINTWISE_NU;
    let grid = XiGrid::default_resolution();
    let mut params = sim_params(cfg, &grid, nu, 1.5 / nu, LEVELS.0, LEVELS.1)?.nonlinear();
    params.t_end = 1.5 / nu;
    params.long_horizon = true;
    params.sample_every = 8;
    let size = cfg.epsilon * nu.sqrt();
    let init = stability_initial_data(grid, k_max, size, params.energy.m, cfg.seed)?;
    let samples = Simulator::new(&init, params)?.run()?;
    let worst = samples
        .iter()
        .filter(|s| s.t >= 1.0 / nu)
        .map(|s| (1.0 + s.t * s.t).sqrt().powi(POINTWISE_POWER) * s.field.iter().copied().fold(0.0, f64::max))
        .fold(0.0, f64::max);
    Ok(Verdict::at_most("pointwise field damping beyond 1/nu at nu=1e-2 (partial coverage)", worst / size, SIZE_CONSTANT)
        .timed(clock.elapsed().as_secs_f64()))
}
