use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{FourierPair, SpectralField};
use crate::wave::{apply_wave, WaveOperatorHandle};

/// Collisionless free-streaming density `g_in_k(k t)`, by band-limited interpolation.
pub fn free_density_oracle(g_in: &SpectralField, k: i64, t: f64) -> Result<Complex64> {
    let pair = FourierPair::new(g_in.grid());
    pair.interpolate_xi(g_in.row(k), k as f64 * t)
}

/// Closed-form collisionless linear density around the Maxwellian for one nonzero mode.
#[derive(Clone, Debug)]
pub struct LandauOracle {
    handle: WaveOperatorHandle,
    /// `D_k[g_in](v)` weighted by `P / W` on the velocity nodes.
    weighted: Vec<Complex64>,
    /// `D_k[g_in]` on the xi nodes.
    distorted_hat: Vec<Complex64>,
    kernel_hat: Vec<Complex64>,
}

impl LandauOracle {
    pub fn new(handle: WaveOperatorHandle, g_in_row: &[Complex64], nu: f64) -> Result<Self> {
        if nu != 0.0 {
            return Err(Error::Domain(format!("closed-form density is collisionless, got nu={nu}")));
        }
        let pair = handle.pair().clone();
        let f = pair.xi_to_v(g_in_row)?;
        let distorted = apply_wave(&handle, &f)?;
        let t = &handle.table;
        let weighted = distorted.iter().zip(&t.kern).map(|(z, kern)| z * (1.0 + kern)).collect();
        let distorted_hat = pair.v_to_xi(&distorted)?;
        let kernel_hat = pair.real_v_to_xi(&t.kern)?;
        Ok(Self { handle, weighted, distorted_hat, kernel_hat })
    }

    pub fn k(&self) -> i64 {
        self.handle.k()
    }

    /// `sum (P/W)(v) e^{-i k t v} D_k[g_in](v) dv`.
    pub fn density(&self, t: f64) -> Complex64 {
        let grid = self.handle.grid();
        let dv = grid.delta_v();
        let kt = self.k() as f64 * t;
        (0..grid.len()).map(|m| self.weighted[m] * Complex64::from_polar(dv, -kt * grid.v_node(m))).sum()
    }

    /// `h(k t) + (1 / 2 pi) integral conj(K_hat)(xi) h(sign(k) xi + k t) dxi` at a node-aligned `k t`.
    pub fn density_xi_side(&self, t: f64) -> Result<Complex64> {
        let grid = self.handle.grid();
        let h = grid.delta_xi();
        let k = self.k();
        let shift = k as f64 * t / h;
        let cells = shift.round();
        if (shift - cells).abs() > 1e-9 {
            return Err(Error::Domain(format!("k t = {} is not on a grid node", k as f64 * t)));
        }
        let n = grid.len() as i64;
        let z = grid.zero_index() as i64;
        let at = |j: i64| if (0..n).contains(&j) { self.distorted_hat[j as usize] } else { Complex64::new(0.0, 0.0) };
        let cells = cells as i64;
        let sign = k.signum();
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let target = z + sign * (j - z) + cells;
            sum += self.kernel_hat[j as usize].conj() * at(target);
        }
        Ok(at(z + cells) + sum * h / (2.0 * std::f64::consts::PI))
    }
}

/// One-shot wrapper of [`LandauOracle::density`].
pub fn landau_density_closed_form(handle: WaveOperatorHandle, g_in_row: &[Complex64], t: f64, nu: f64) -> Result<Complex64> {
    Ok(LandauOracle::new(handle, g_in_row, nu)?.density(t))
}
