use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::common::{bump_eigen, grid_for, scaled, seeded_state, sim_params};
use super::config::ExperimentConfig;
use super::report::{RunReport, SeriesRow, Verdict};
use crate::error::{Error, Result};
use crate::evolution::{fit_exponential_rate, Sample, Simulator};

const K_MAX: usize = 2;
const BRACKET: (f64, f64) = (0.9, 1.1);
/// Amplification, at the largest tested `nu`, that the default horizon factor guarantees.
const TARGET_AMPLIFICATION: f64 = 3.0;

/// Outcome of one growth run and its control on the pure Maxwellian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthCell {
    pub nu: f64,
    pub gamma: f64,
    pub lambda_r: f64,
    pub horizon: f64,
    pub rate: f64,
    pub amplification: f64,
    /// Rate and amplification of the same seed without the bump, when requested.
    pub control: Option<(f64, f64)>,
}

/// `gamma = nu^(1/3 - epsilon0)`.
pub fn instability_gamma(nu: f64, epsilon0: f64) -> f64 {
    nu.powf(1.0 / 3.0 - epsilon0)
}

fn norms(samples: &[Sample]) -> (Vec<f64>, Vec<f64>) {
    (samples.iter().map(|s| s.t).collect(), samples.iter().map(|s| s.nonzero_norm()).collect())
}

/// Growth of `||<v>^m f_neq||` over `[0, horizon]` from the eigenmode seed, optionally also without the bump.
pub fn growth_run(
    cfg: &ExperimentConfig,
    nu: f64,
    gamma: f64,
    delta_xi: f64,
    horizon: Option<f64>,
    with_control: bool,
) -> Result<(GrowthCell, Vec<Sample>)> {
    seeded_growth(cfg, nu, gamma, gamma.sqrt() * nu.powf(cfg.seed_beta), delta_xi, horizon, with_control)
}

/// The same seed as [`growth_run`] at `nu`, evolved without collisions.
pub fn collisionless_reference(cfg: &ExperimentConfig, nu: f64, gamma: f64, delta_xi: f64, horizon: f64) -> Result<GrowthCell> {
    let amplitude = gamma.sqrt() * nu.powf(cfg.seed_beta);
    Ok(seeded_growth(cfg, 0.0, gamma, amplitude, delta_xi, Some(horizon), false)?.0)
}

fn seeded_growth(
    cfg: &ExperimentConfig,
    nu: f64,
    gamma: f64,
    amplitude: f64,
    delta_xi: f64,
    horizon: Option<f64>,
    with_control: bool,
) -> Result<(GrowthCell, Vec<Sample>)> {
    let (set, sol) = bump_eigen(gamma)?;
    let lambda_r = sol.lambda.re;
    let horizon = horizon.unwrap_or((8.0f64).ln() / lambda_r);
    let grid = grid_for(cfg, (8.0 / gamma).max(20.0 / lambda_r).max(96.0), delta_xi)?;
    let k_max = cfg.sim.k_max.unwrap_or(K_MAX);
    let mut outcome = Vec::new();
    let runs: &[bool] = if with_control { &[true, false] } else { &[true] };
    for &with_bump in runs {
        let init = seeded_state(grid, k_max, &set, &sol, amplitude, with_bump)?;
        let params = sim_params(cfg, &grid, nu, horizon, 0, 4)?.nonlinear();
        let samples = Simulator::new(&init, params)?.run()?;
        let (t, y) = norms(&samples);
        let end = *t.last().ok_or_else(|| Error::Domain("empty run".into()))?;
        let rate = fit_exponential_rate(&t, &y, (0.0, end))?.0;
        outcome.push((rate, y[y.len() - 1] / y[0], samples));
    }
    let control = if with_control { outcome.pop().map(|c| (c.0, c.1)) } else { None };
    let growth = outcome.pop().expect("bump run");
    let cell = GrowthCell {
        nu,
        gamma,
        lambda_r,
        horizon,
        rate: growth.0,
        amplification: growth.1,
        control,
    };
    Ok((cell, growth.2))
}

/// Default `delta0 = ln 3 / (c0 ln(1 / nu_max))` with `c0` the lower end of the rate bracket in units of gamma.
pub fn default_delta0(lambda_r: f64, gamma: f64, nu_max: f64) -> f64 {
    let c0 = BRACKET.0 * lambda_r / gamma;
    TARGET_AMPLIFICATION.ln() / (c0 * (1.0 / nu_max).ln())
}

pub fn run_instability(cfg: &ExperimentConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(cfg.clone());
    let mut nus = cfg.nu_values();
    nus.sort_by(|a, b| b.total_cmp(a));
    let nu_max = nus[0];
    let delta0 = match cfg.delta0 {
        Some(d) => d,
        None => {
            let g = instability_gamma(nu_max, cfg.epsilon0);
            let (_, sol) = bump_eigen(g)?;
            default_delta0(sol.lambda.re, g, nu_max)
        }
    };
    report.fitted_rates.insert("delta0".into(), delta0);
    let mut cells = Vec::new();
    for (i, &nu) in nus.iter().enumerate() {
        let clock = Instant::now();
        let gamma = instability_gamma(nu, cfg.epsilon0);
        let horizon = delta0 / gamma * (1.0 / nu).ln();
        let (cell, samples) = growth_run(cfg, nu, gamma, 3.0 / 64.0, Some(horizon), true)?;
        let (control_rate, control_amplification) = cell.control.expect("control requested");
        if i == 0 {
            report.series = SeriesRow::from_samples(&samples);
            let free = collisionless_reference(cfg, nu, gamma, 3.0 / 64.0, horizon)?;
            report.fitted_rates.insert(format!("collisionless_rate_over_lambda_r@nu={nu:e}"), free.rate / free.lambda_r);
        }
        let elapsed = clock.elapsed().as_secs_f64();
        let tag = format!("nu={nu:e}");
        let c0 = BRACKET.0 * cell.lambda_r / gamma;
        report.fitted_rates.insert(format!("lambda_r@{tag}"), cell.lambda_r);
        report.fitted_rates.insert(format!("growth_rate@{tag}"), cell.rate);
        report.fitted_rates.insert(format!("control_rate@{tag}"), control_rate);
        report.fitted_rates.insert(format!("horizon@{tag}"), horizon);
        let verdicts = [
            Verdict::within(format!("growth rate over lambda_r ({tag})"), cell.rate / cell.lambda_r, 1.0, BRACKET.1 - 1.0),
            Verdict::at_least(
                format!("amplification at T0 ({tag})"),
                cell.amplification,
                nu.powf(-c0 * delta0).max(TARGET_AMPLIFICATION),
            ),
            Verdict::at_most(format!("maxwellian control amplification ({tag})"), control_amplification, 1.0),
        ];
        for v in verdicts {
            report.verdicts.push(scaled(v.timed(elapsed), cfg.tol_scale));
        }
        cells.push(cell);
    }
    if cells.len() >= 2 {
        let (a, b) = (&cells[0], &cells[cells.len() - 1]);
        let expected = (a.nu / b.nu).powf(1.0 / 3.0 - cfg.epsilon0);
        let ratio = a.rate / b.rate;
        report.fitted_rates.insert("rate_ratio".into(), ratio);
        report.verdicts.push(scaled(
            Verdict::within("growth-rate scaling in nu, relative to nu^(1/3 - epsilon0)", ratio / expected, 1.0, 0.15),
            cfg.tol_scale,
        ));
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}
