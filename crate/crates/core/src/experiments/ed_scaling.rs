use std::time::Instant;

use num_complex::Complex64;

use super::common::{e_folding_time, grid_for, mean_free, scaled, sim_params};
use super::config::ExperimentConfig;
use super::report::{RunReport, SeriesRow, Verdict};
use crate::error::{Error, Result};
use crate::evolution::{fit_exponential_rate, linear_fit, LinearBackground, Sample, Simulator};
use crate::spectral::{build_field, ModeSet};

const K_MAX: usize = 3;
/// Horizon in units of the mode-one e-folding estimate `(3 / nu)^(1/3)`.
const HORIZON: f64 = 1.3;

/// `(3 / (nu k^2))^(1/3)`, the e-folding time of `exp(-nu k^2 t^3 / 3)`.
pub fn predicted_e_folding(nu: f64, k: i64) -> f64 {
    (3.0 / (nu * (k * k) as f64)).cbrt()
}

/// E-folding times of the modes `1..=k_max` in one linear run, plus the zero-mode decay rate.
pub fn e_folding_times(cfg: &ExperimentConfig, nu: f64, k_max: usize) -> Result<(Vec<f64>, f64, Vec<Sample>)> {
    let grid = grid_for(cfg, 96.0, 3.0 / 64.0)?;
    let init = build_field(ModeSet::new(k_max)?, grid, |k, xi| {
        if k == 0 {
            mean_free(xi)
        } else {
            Complex64::new((-xi * xi / 2.0).exp(), 0.0)
        }
    })?;
    let t_end = HORIZON * predicted_e_folding(nu, 1);
    let params = sim_params(cfg, &grid, nu, t_end, 0, 0)?.linear(LinearBackground::Maxwellian);
    let samples = Simulator::new(&init, params)?.run()?;
    let t: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let mut taus = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let y: Vec<f64> = samples.iter().map(|s| s.weighted_norms[k]).collect();
        let tau = e_folding_time(&t, &y)
            .ok_or_else(|| Error::Domain(format!("mode {k} did not decay by 1/e before t={t_end} at nu={nu}")))?;
        taus.push(tau);
    }
    let zero: Vec<f64> = samples.iter().map(|s| s.weighted_norms[0]).collect();
    let zero_rate = fit_exponential_rate(&t, &zero, (0.0, t_end))?.0;
    Ok((taus, zero_rate, samples))
}

pub fn run_ed_scaling(cfg: &ExperimentConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(cfg.clone());
    let k_max = cfg.sim.k_max.unwrap_or(K_MAX);
    let nus = cfg.nu_values();
    let mut table = Vec::new();
    for (i, &nu) in nus.iter().enumerate() {
        let (taus, zero_rate, samples) = e_folding_times(cfg, nu, k_max)?;
        if i == 0 {
            report.series = SeriesRow::from_samples(&samples);
        }
        for (k, tau) in taus.iter().enumerate() {
            report.fitted_rates.insert(format!("tau@nu={nu:e},k={}", k + 1), *tau);
        }
        report.fitted_rates.insert(format!("zero_mode_rate@nu={nu:e}"), zero_rate);
        report.verdicts.push(scaled(
            Verdict::at_most(format!("zero mode decays at heat rate (nu={nu:e})"), -zero_rate, 10.0 * nu)
                .timed(start.elapsed().as_secs_f64()),
            cfg.tol_scale,
        ));
        table.push((nu, taus));
    }
    let elapsed = start.elapsed().as_secs_f64();
    if table.len() >= 2 {
        let mut slopes = Vec::new();
        for k in 0..k_max {
            let points: Vec<(f64, f64)> = table.iter().map(|(nu, taus)| (nu.ln(), taus[k].ln())).collect();
            slopes.push(linear_fit(&points)?.0);
        }
        let nu_slope = slopes.iter().sum::<f64>() / slopes.len() as f64;
        report.fitted_rates.insert("slope_nu".into(), nu_slope);
        report.verdicts.push(scaled(Verdict::within("e-folding slope in nu", nu_slope, -1.0 / 3.0, 0.08).timed(elapsed), cfg.tol_scale));
    }
    if k_max >= 2 {
        let mut slopes = Vec::new();
        for (_, taus) in &table {
            let points: Vec<(f64, f64)> = taus.iter().enumerate().map(|(k, t)| (((k + 1) as f64).ln(), t.ln())).collect();
            slopes.push(linear_fit(&points)?.0);
        }
        let k_slope = slopes.iter().sum::<f64>() / slopes.len() as f64;
        report.fitted_rates.insert("slope_k".into(), k_slope);
        report.verdicts.push(scaled(Verdict::within("e-folding slope in |k|", k_slope, -2.0 / 3.0, 0.15).timed(elapsed), cfg.tol_scale));
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}
