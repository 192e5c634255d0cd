use std::f64::consts::PI;

use num_complex::Complex64;

use super::dawson::dawson;
use super::grid::XiGrid;
use super::transform::FourierPair;
use crate::error::{Error, Result};

pub const DEFAULT_SPILL_TOL: f64 = 1e-8;

fn sign_multiplier(xi: f64) -> Complex64 {
    if xi > 0.0 {
        Complex64::new(0.0, -1.0)
    } else if xi < 0.0 {
        Complex64::new(0.0, 1.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Relative magnitude of the two outermost samples on each side.
pub fn edge_level(samples: &[Complex64]) -> f64 {
    let scale = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let n = samples.len();
    [samples[0], samples[1], samples[n - 2], samples[n - 1]].iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
}

/// Hilbert transform acting on xi-side samples: multiplication by `-i sign(xi)`.
pub fn hilbert_transform(grid: &XiGrid, samples: &[Complex64], spill_tol: f64) -> Result<Vec<Complex64>> {
    if samples.len() != grid.len() {
        return Err(Error::Length { expected: grid.len(), got: samples.len() });
    }
    let level = edge_level(samples);
    if level > spill_tol {
        return Err(Error::Spill { k: 0, level, tol: spill_tol });
    }
    Ok(samples.iter().enumerate().map(|(j, z)| z * sign_multiplier(grid.node(j))).collect())
}

/// Gaussian moment `integral v^p exp(-v^2/2) dv`.
fn gaussian_moment(p: usize) -> f64 {
    if p % 2 == 1 {
        return 0.0;
    }
    let mut double_factorial = 1.0;
    let mut i = p as i64 - 1;
    while i > 1 {
        double_factorial *= i as f64;
        i -= 2;
    }
    (2.0 * PI).sqrt() * double_factorial
}

/// Velocity-side Hilbert transform with the low moments handled exactly.
///
/// The input is split into a combination of `v^j exp(-v^2/2)`, `j < 4`,
/// carrying its first four moments, plus a remainder with vanishing moments.
/// The remainder goes through the discrete sign multiplier, whose periodic
/// wrap-around then decays fast; the Gaussian part uses the closed form
/// `H[exp(-v^2/2)] = (2/sqrt(pi)) D(v/sqrt 2)`.
#[derive(Clone, Debug)]
pub struct VelocityHilbert {
    pair: FourierPair,
    v: Vec<f64>,
    basis: [Vec<f64>; 4],
    images: [Vec<f64>; 4],
}

impl VelocityHilbert {
    pub fn new(grid: XiGrid) -> Self {
        let pair = FourierPair::new(grid);
        let v = grid.v_nodes();
        let gauss: Vec<f64> = v.iter().map(|&x| (-x * x / 2.0).exp()).collect();
        let mut basis: [Vec<f64>; 4] = Default::default();
        let mut images: [Vec<f64>; 4] = Default::default();
        basis[0] = gauss.clone();
        images[0] = v.iter().map(|&x| 2.0 / PI.sqrt() * dawson(x / 2f64.sqrt())).collect();
        for j in 1..4 {
            basis[j] = basis[j - 1].iter().zip(&v).map(|(b, x)| b * x).collect();
            let c = gaussian_moment(j - 1) / PI;
            images[j] = images[j - 1].iter().zip(&v).map(|(h, x)| x * h - c).collect();
        }
        Self { pair, v, basis, images }
    }

    pub fn grid(&self) -> XiGrid {
        self.pair.grid()
    }

    pub fn pair(&self) -> &FourierPair {
        &self.pair
    }

    /// Discrete sign multiplier without moment handling.
    pub fn plain(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        let grid = self.pair.grid();
        let mut hat = self.pair.v_to_xi(f)?;
        for (j, z) in hat.iter_mut().enumerate() {
            *z *= sign_multiplier(grid.node(j));
        }
        self.pair.xi_to_v(&hat)
    }

    pub fn apply(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        let dv = self.pair.grid().delta_v();
        let mut moments = [Complex64::new(0.0, 0.0); 4];
        for (p, m) in moments.iter_mut().enumerate() {
            *m = f.iter().zip(&self.v).map(|(z, x)| z * x.powi(p as i32)).sum::<Complex64>() * dv;
        }
        // Moment matrix decouples into even (0, 2) and odd (1, 3) blocks.
        let g = |p| gaussian_moment(p);
        let solve = |a: f64, b: f64, c: f64, d: f64, r0: Complex64, r1: Complex64| {
            let det = a * d - b * c;
            ((r0 * d - r1 * b) / det, (r1 * a - r0 * c) / det)
        };
        let (c0, c2) = solve(g(0), g(2), g(2), g(4), moments[0], moments[2]);
        let (c1, c3) = solve(g(2), g(4), g(4), g(6), moments[1], moments[3]);
        let coeffs = [c0, c1, c2, c3];
        let remainder: Vec<Complex64> = (0..f.len())
            .map(|m| f[m] - (0..4).map(|j| coeffs[j] * self.basis[j][m]).sum::<Complex64>())
            .collect();
        let mut out = self.plain(&remainder)?;
        for (m, z) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *z += coeffs[j] * self.images[j][m];
            }
        }
        Ok(out)
    }
}

/// Principal-value Hilbert transform at one point by symmetric folding.
pub fn hilbert_pv<F: Fn(f64) -> f64>(f: F, v: f64, reach: f64, tol: f64) -> Result<f64> {
    let folded = |s: f64| if s == 0.0 { 0.0 } else { (f(v - s) - f(v + s)) / s };
    // Geometric panels keep the adaptive rule from missing the peak near s = |v| on long reaches.
    let mut lo = 0.0;
    let mut hi = (2.0 * (v.abs() + 1.0)).min(reach);
    let mut sum = 0.0;
    while lo < reach {
        sum += super::quadrature::integrate_real(folded, lo, hi, tol)?;
        lo = hi;
        hi = (4.0 * hi).min(reach);
    }
    Ok(sum / PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn lorentzian_matches_principal_value_oracle() {
        // Slow 1/v^2 tails alias with period 2 pi / delta_xi, so a fine xi spacing is used here.
        let grid = XiGrid::new(24.0, 32768).unwrap();
        let pair = FourierPair::new(grid);
        let hat: Vec<Complex64> = grid.nodes().iter().map(|&x| c(PI * (-x.abs()).exp())).collect();
        let h = pair.xi_to_v(&hilbert_transform(&grid, &hat, 1e-8).unwrap()).unwrap();
        let lorentz = |v: f64| 1.0 / (1.0 + v * v);
        for m in (0..grid.len()).step_by(7) {
            let v = grid.v_node(m);
            if v.abs() > 5.0 {
                continue;
            }
            let pv = hilbert_pv(lorentz, v, 1e7, 1e-12).unwrap();
            assert!((pv - v / (1.0 + v * v)).abs() < 1e-6);
            assert!((h[m].re - v / (1.0 + v * v)).abs() < 1e-6, "v={v}: {}", h[m].re);
        }
    }

    #[test]
    fn lorentzian_at_default_resolution_equals_periodized_transform() {
        let grid = XiGrid::default_resolution();
        let pair = FourierPair::new(grid);
        let hat: Vec<Complex64> = grid.nodes().iter().map(|&x| c(PI * (-x.abs()).exp())).collect();
        let h = pair.xi_to_v(&hilbert_transform(&grid, &hat, 1e-8).unwrap()).unwrap();
        let period = 2.0 * PI / grid.delta_xi();
        for m in (0..grid.len()).step_by(5) {
            let v = grid.v_node(m);
            // sum over images of v/(1+v^2) = Re (pi/L) cot(pi (v - i) / L)
            let z = Complex64::new(v, -1.0) * (PI / period);
            let periodized = (z.cos() / z.sin() * (PI / period)).re;
            assert!((h[m].re - periodized).abs() < 1e-10);
        }
    }

    #[test]
    fn even_real_input_gives_odd_real_output() {
        let grid = XiGrid::default_resolution();
        let hat: Vec<Complex64> = grid.nodes().iter().map(|&x| c((-x * x / 2.0).exp())).collect();
        let h = hilbert_transform(&grid, &hat, 1e-8).unwrap();
        let v = FourierPair::new(grid).xi_to_v(&h).unwrap();
        let z = grid.zero_index();
        assert!(v[z].norm() < 1e-15);
        for m in 1..grid.len() {
            assert!((v[m] + v[grid.len() - m]).norm() < 1e-14);
            assert!(v[m].im.abs() < 1e-14);
        }
    }

    #[test]
    fn squares_to_minus_identity_on_mean_zero_input() {
        let grid = XiGrid::default_resolution();
        let hat: Vec<Complex64> =
            grid.nodes().iter().map(|&x| Complex64::new(x * x, x) * (-x * x / 2.0).exp()).collect();
        let once = hilbert_transform(&grid, &hat, 1e-8).unwrap();
        let twice = hilbert_transform(&grid, &once, 1e-8).unwrap();
        for (a, b) in twice.iter().zip(&hat) {
            assert!((a + b).norm() < 1e-6);
        }
    }

    #[test]
    fn spill_is_reported() {
        let grid = XiGrid::new(4.0, 64).unwrap();
        let hat = vec![c(1.0); 64];
        assert!(matches!(hilbert_transform(&grid, &hat, 1e-8), Err(Error::Spill { .. })));
    }

    #[test]
    fn velocity_side_transform_of_gaussian_packets_matches_oracle() {
        let grid = XiGrid::default_resolution();
        let hil = VelocityHilbert::new(grid);
        let shape = |v: f64| (-(v - 0.7) * (v - 0.7) / 1.5).exp() * (1.0 + 0.3 * v);
        let f: Vec<Complex64> = grid.v_nodes().iter().map(|&v| c(shape(v))).collect();
        let h = hil.apply(&f).unwrap();
        for m in (0..grid.len()).step_by(97) {
            let v = grid.v_node(m);
            // Beyond |v| ~ 12 the v^-5 tail of the remainder aliases at the 1e-11 level.
            if v.abs() > 12.0 {
                continue;
            }
            let pv = hilbert_pv(shape, v, 60.0, 1e-13).unwrap();
            assert!((h[m].re - pv).abs() < 1e-11, "v={v}: {} vs {pv}", h[m].re);
        }
    }
}
