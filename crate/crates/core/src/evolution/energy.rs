//! Weighted energy and dissipation functionals of the enhanced-dissipation estimate.
//!
//! Norms follow `||h||^2 = sum_k (1 / 2 pi) integral |h_k(xi)|^2 dxi`, which is the
//! velocity L2 norm of each mode by Parseval. Velocity moments `v^alpha` become
//! `(i d/dxi)^alpha` and are taken with eighth-order central differences.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::multiplier::multiplier_eval;
use crate::error::{Error, Result};
use crate::spectral::{FourierPair, SpectralField, XiGrid};

const STENCIL: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
/// Largest `s * m` for which the moments stay resolved.
pub const MOMENT_GUARD: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyParams {
    pub s: u32,
    pub m: u32,
    pub kappa: f64,
    pub c_s: f64,
}

impl EnergyParams {
    /// `C_s = (64 s)^2` and `kappa = 1 / (32 C_s s)`, the largest choices meeting both smallness conditions.
    pub fn with_levels(s: u32, m: u32) -> Result<Self> {
        let c_s = if s == 0 { 1.0 } else { (64.0 * s as f64).powi(2) };
        let kappa = 1.0 / (32.0 * c_s * s.max(1) as f64);
        let p = Self { s, m, kappa, c_s };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.s as f64;
        let slack = 1.0 + 1e-12;
        if !(self.kappa > 0.0 && self.kappa <= 1.0) {
            return Err(Error::Config(format!("kappa={} outside (0, 1]", self.kappa)));
        }
        if !(self.c_s >= 1.0) {
            return Err(Error::Config(format!("C_s={} below 1", self.c_s)));
        }
        if 2.0 * s / self.c_s.sqrt() > slack / 32.0 {
            return Err(Error::Config(format!("2s/sqrt(C_s) = {} exceeds 1/32", 2.0 * s / self.c_s.sqrt())));
        }
        if self.c_s * s * self.kappa > slack / 32.0 {
            return Err(Error::Config(format!("C_s s kappa = {} exceeds 1/32", self.c_s * s * self.kappa)));
        }
        if self.s * self.m > MOMENT_GUARD {
            return Err(Error::Guard(format!("s*m = {} exceeds {MOMENT_GUARD}", self.s * self.m)));
        }
        Ok(())
    }
}

impl Default for EnergyParams {
    fn default() -> Self {
        Self::with_levels(2, 4).expect("default levels are admissible")
    }
}

/// One xi-derivative, eighth order, zero outside the grid.
pub fn xi_derivative(grid: &XiGrid, f: &[Complex64]) -> Vec<Complex64> {
    let n = f.len();
    let h = grid.delta_xi();
    let at = |j: isize| if j >= 0 && (j as usize) < n { f[j as usize] } else { Complex64::new(0.0, 0.0) };
    (0..n as isize)
        .map(|j| {
            let mut d = Complex64::new(0.0, 0.0);
            for (o, c) in STENCIL.iter().enumerate() {
                let o = o as isize + 1;
                d += *c * (at(j + o) - at(j - o));
            }
            d / h
        })
        .collect()
}

/// `[f, f', ..., f^(order)]`.
pub fn xi_derivatives(grid: &XiGrid, f: &[Complex64], order: u32) -> Vec<Vec<Complex64>> {
    let mut out = vec![f.to_vec()];
    for _ in 0..order {
        let next = xi_derivative(grid, out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// Same moments through the velocity side: multiply by `v^alpha` and transform back.
pub fn spectral_moments(pair: &FourierPair, f: &[Complex64], order: u32) -> Result<Vec<Vec<Complex64>>> {
    let v_side = pair.xi_to_v(f)?;
    let v = pair.grid().v_nodes();
    let mut out = Vec::with_capacity(order as usize + 1);
    for a in 0..=order {
        let moved: Vec<Complex64> = v_side.iter().zip(&v).map(|(z, x)| z * x.powi(a as i32)).collect();
        // v^a f has transform (i d/dxi)^a f_hat; divide by i^a to compare with plain derivatives.
        let back = pair.v_to_xi(&moved)?;
        let unit = Complex64::new(0.0, 1.0).powu(a);
        out.push(back.iter().map(|z| z / unit).collect());
    }
    Ok(out)
}

fn squared_norm(grid: &XiGrid, f: &[Complex64]) -> f64 {
    f.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.delta_xi() / (2.0 * PI)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `||<v>^m f||` for one mode from its transform, via `(1 + v^2)^m = sum C(m, j) v^(2j)`.
pub fn weighted_mode_norm(grid: &XiGrid, f: &[Complex64], m: u32) -> f64 {
    let d = xi_derivatives(grid, f, m);
    (0..=m).map(|j| binomial(m, j) * squared_norm(grid, &d[j as usize])).sum::<f64>().sqrt()
}

fn mode_contribution(
    grid: &XiGrid,
    k: i64,
    moments: &[Vec<Complex64>],
    ep: &EnergyParams,
    nu: f64,
    t: f64,
) -> (f64, f64) {
    let kf = (k as f64).abs();
    let nu3 = nu.cbrt();
    let a = ep.kappa * nu * t;
    let b = ep.c_s * ep.kappa * nu3 * t;
    let k23 = kf.powf(2.0 / 3.0);
    // Level-independent weights per node: energy and dissipation factors multiplying |M F|^2.
    let weights: Vec<(f64, f64)> = (0..grid.len())
        .map(|j| {
            let xi2 = grid.node(j).powi(2);
            let mut e = 1.0;
            let mut d = nu * xi2 + 0.25 * nu3 * k23;
            let (mut pa, mut pb) = (1.0, 1.0);
            for _ in 1..=ep.s {
                pa *= a * xi2;
                pb *= b * k23;
                e += pa + pb;
                d += pa * (nu * xi2 + 0.25 * nu3 * k23) + pb * (nu * xi2 + 0.25 * nu3 * k23);
            }
            (e, d)
        })
        .collect();
    let mut energy = 0.0;
    let mut dissipation = 0.0;
    for f in moments {
        for (j, z) in f.iter().enumerate() {
            let mf = multiplier_eval(k, grid.node(j), nu) * z.norm();
            energy += weights[j].0 * mf * mf;
            dissipation += weights[j].1 * mf * mf;
        }
    }
    let scale = grid.delta_xi() / (2.0 * PI);
    (energy * scale, dissipation * scale)
}

/// Energy and dissipation summed over every mode of the state.
///
/// The `l = 0` level appears in both time-weighted sums of the definition and is counted once.
pub fn energy_dissipation_eval(state: &SpectralField, ep: &EnergyParams, nu: f64, t: f64) -> Result<(f64, f64)> {
    energy_dissipation_rows(state.grid(), state.modes().modes().map(|k| (k, state.row(k))), ep, nu, t)
}

/// Energy and dissipation of the nonzero modes only.
pub fn energy_dissipation_nonzero(state: &SpectralField, ep: &EnergyParams, nu: f64, t: f64) -> Result<(f64, f64)> {
    energy_dissipation_rows(state.grid(), state.modes().nonzero().map(|k| (k, state.row(k))), ep, nu, t)
}

/// Same functional on explicit `(k, row)` pairs.
pub fn energy_dissipation_rows<'a, I>(grid: XiGrid, rows: I, ep: &EnergyParams, nu: f64, t: f64) -> Result<(f64, f64)>
where
    I: Iterator<Item = (i64, &'a [Complex64])>,
{
    ep.validate()?;
    let mut total = (0.0, 0.0);
    for (k, row) in rows {
        let moments = xi_derivatives(&grid, row, ep.m);
        let (e, d) = mode_contribution(&grid, k, &moments, ep, nu, t);
        total.0 += e;
        total.1 += d;
    }
    Ok(total)
}

/// Energy of one mode with velocity-side moments, the cross-check of the default route.
pub fn energy_dissipation_spectral(pair: &FourierPair, k: i64, row: &[Complex64], ep: &EnergyParams, nu: f64, t: f64) -> Result<(f64, f64)> {
    ep.validate()?;
    let grid = pair.grid();
    let moments = spectral_moments(pair, row, ep.m)?;
    Ok(mode_contribution(&grid, k, &moments, ep, nu, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ModeSet;

    fn hermite_like(grid: &XiGrid) -> Vec<Complex64> {
        grid.nodes().iter().map(|&x| Complex64::new(1.0 - 0.3 * x, 0.2 * x * x) * (-x * x / 2.0).exp()).collect()
    }

    #[test]
    fn defaults_meet_the_smallness_conditions() {
        for s in 0..=4 {
            let p = EnergyParams::with_levels(s, 2).unwrap();
            assert!(2.0 * s as f64 / p.c_s.sqrt() <= 1.0 / 32.0 + 1e-15);
            assert!(p.c_s * s as f64 * p.kappa <= 1.0 / 32.0 + 1e-15);
        }
        assert!(matches!(EnergyParams::with_levels(3, 3), Err(Error::Guard(_))));
        let bad = EnergyParams { s: 2, m: 1, kappa: 1.0, c_s: 1.0 };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn zero_state_has_zero_energy() {
        let field = SpectralField::zeros(ModeSet::new(2).unwrap(), XiGrid::new(16.0, 256).unwrap());
        assert_eq!(energy_dissipation_eval(&field, &EnergyParams::default(), 1e-3, 5.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn derivative_and_velocity_routes_agree() {
        let grid = XiGrid::default_resolution();
        let pair = FourierPair::new(grid);
        let row = hermite_like(&grid);
        let ep = EnergyParams::with_levels(2, 4).unwrap();
        for t in [0.0, 10.0] {
            let fd = energy_dissipation_rows(grid, std::iter::once((1, row.as_slice())), &ep, 1e-3, t).unwrap();
            let sp = energy_dissipation_spectral(&pair, 1, &row, &ep, 1e-3, t).unwrap();
            assert!((fd.0 - sp.0).abs() < 1e-8 * sp.0, "{fd:?} {sp:?}");
            assert!((fd.1 - sp.1).abs() < 1e-8 * sp.1);
        }
    }

    #[test]
    fn weighted_norm_matches_velocity_side() {
        let grid = XiGrid::default_resolution();
        let pair = FourierPair::new(grid);
        let row = hermite_like(&grid);
        let f = pair.xi_to_v(&row).unwrap();
        for m in 0..=4 {
            let direct = crate::wave::weighted_v_norm(&grid, &f, m as f64);
            assert!((weighted_mode_norm(&grid, &row, m) - direct).abs() < 1e-9 * direct, "m={m}");
        }
    }
}
