use num_complex::Complex64;

use super::config::ExperimentConfig;
use super::report::{Comparison, Verdict};
use crate::backgrounds::{default_bump, BackgroundSet, Profile};
use crate::error::{Error, Result};
use crate::evolution::{weighted_mode_norm, EnergyParams, SimParams};
use crate::penrose::{continue_eigenvalue, eigenfunction_hat, m0_anchor, ContinuationOptions, EigenSolution};
use crate::spectral::{ModeSet, SpectralField, XiGrid};

/// Half-width of the continuation box, in units of gamma, used at amplitude `M0 + 1`.
pub const WIDE_DELTA: f64 = 1.5;

/// Grid from the overrides, or the one covering `xi_max` with spacing `delta_xi`.
pub fn grid_for(cfg: &ExperimentConfig, xi_max: f64, delta_xi: f64) -> Result<XiGrid> {
    match (cfg.grid.xi_max, cfg.grid.n_xi) {
        (Some(x), Some(n)) => XiGrid::new(x, n),
        (Some(x), None) => XiGrid::covering(x, delta_xi),
        (None, Some(n)) => XiGrid::new(xi_max, n),
        (None, None) => XiGrid::covering(xi_max, delta_xi),
    }
}

/// Integrator settings shared by the drivers, with the config overrides applied.
pub fn sim_params(cfg: &ExperimentConfig, grid: &XiGrid, nu: f64, t_end: f64, s: u32, m: u32) -> Result<SimParams> {
    let mut p = SimParams::new(grid, nu, cfg.sim.t_end.unwrap_or(t_end));
    p.dt = grid.delta_xi() * cfg.sim.dt_cells.unwrap_or(1) as f64;
    p.energy = EnergyParams::with_levels(cfg.sim.s.unwrap_or(s), cfg.sim.m.unwrap_or(m))?;
    p.sample_every = cfg.sim.sample_every.unwrap_or(1);
    Ok(p)
}

/// `(1 - i xi / 2) exp(-xi^2 / 2)` rotated by `phase`.
pub fn packet(xi: f64, phase: f64) -> Complex64 {
    Complex64::new(1.0, -0.5 * xi) * (-xi * xi / 2.0).exp() * Complex64::from_polar(1.0, phase)
}

/// Mean-free zero-mode shape `(xi^2 / 2) exp(-xi^2 / 2)`.
pub fn mean_free(xi: f64) -> Complex64 {
    Complex64::new(0.5 * xi * xi * (-xi * xi / 2.0).exp(), 0.0)
}

/// Deterministic phase of mode `k` for a seed.
pub fn seed_phase(seed: u64, k: i64) -> f64 {
    (seed as f64 * 0.618_033_988_749_895 * k as f64).rem_euclid(1.0) * std::f64::consts::TAU
}

/// `||<v>^m g||` over every mode of the field.
pub fn total_weighted_norm(field: &SpectralField, m: u32) -> f64 {
    let grid = field.grid();
    field.modes().modes().map(|k| weighted_mode_norm(&grid, field.row(k), m).powi(2)).sum::<f64>().sqrt()
}

/// Background and growing eigenvalue at `gamma` and amplitude `M0 + 1`.
pub fn bump_eigen(gamma: f64) -> Result<(BackgroundSet, EigenSolution)> {
    let bump = default_bump();
    if gamma > bump.gamma0() {
        return Err(Error::Config(format!("gamma={gamma} exceeds gamma0={}", bump.gamma0())));
    }
    let m0 = m0_anchor(gamma, &bump)?;
    let options = ContinuationOptions { delta: WIDE_DELTA, ..Default::default() };
    let sol = continue_eigenvalue(gamma, m0 + 1.0, &bump, options)?;
    let set = BackgroundSet::new(sol.mass, gamma, bump)?;
    Ok((set, sol))
}

/// Bump zero mode `f0 - mu` plus `amplitude Re(e^{ix} e)` in mode one.
pub fn seeded_state(
    grid: XiGrid,
    k_max: usize,
    set: &BackgroundSet,
    sol: &EigenSolution,
    amplitude: f64,
    with_bump: bool,
) -> Result<SpectralField> {
    let e = eigenfunction_hat(sol, set, grid)?;
    let mut field = SpectralField::zeros(ModeSet::new(k_max)?, grid);
    if with_bump {
        for (j, z) in field.row_mut(0).iter_mut().enumerate() {
            let xi = grid.node(j);
            *z = Complex64::new(set.hat(Profile::F0, xi) - (-xi * xi / 2.0).exp(), 0.0);
        }
    }
    for (z, v) in field.row_mut(1).iter_mut().zip(&e.values) {
        *z = 0.5 * amplitude * v;
    }
    field.mirror_negative_modes();
    Ok(field)
}

/// Time of the first drop of `values / values[0]` below `1/e`, linearly interpolated.
pub fn e_folding_time(times: &[f64], values: &[f64]) -> Option<f64> {
    let v0 = *values.first()?;
    let level = v0 / std::f64::consts::E;
    (1..values.len()).find(|&i| values[i] <= level).map(|i| {
        let (a, b) = (values[i - 1], values[i]);
        times[i - 1] + (times[i] - times[i - 1]) * (a - level) / (a - b)
    })
}

/// Apply `--tol-scale`: two-sided tolerances are multiplied, one-sided bounds are moved by the factor.
pub fn scaled(mut v: Verdict, scale: f64) -> Verdict {
    let tolerance = match v.comparison {
        _ if scale == 1.0 => return v,
        Comparison::Holds => return v,
        Comparison::Within => v.tolerance * scale,
        Comparison::AtMost | Comparison::AtLeast => v.tolerance + v.target.abs() * (scale - 1.0),
    };
    let mut out = Verdict::new(std::mem::take(&mut v.name), v.comparison, v.measured, v.target, tolerance);
    out.wall_time_s = v.wall_time_s;
    out
}
