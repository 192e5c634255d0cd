use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::XiGrid;
use crate::error::{Error, Result};

/// Paired transforms between the velocity grid and the xi grid.
///
/// Convention: `f_hat(xi) = integral of exp(-i xi v) f(v) dv`, so the unit
/// Maxwellian maps to `exp(-xi^2 / 2)`.
#[derive(Clone)]
pub struct FourierPair {
    grid: XiGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FourierPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FourierPair").field("grid", &self.grid).finish()
    }
}

impl FourierPair {
    pub fn new(grid: XiGrid) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(grid.len());
        let inverse = planner.plan_fft_inverse(grid.len());
        Self { grid, forward, inverse }
    }

    pub fn grid(&self) -> XiGrid {
        self.grid
    }

    fn centered(&self, samples: &[Complex64], plan: &Arc<dyn Fft<f64>>, scale: f64) -> Result<Vec<Complex64>> {
        let n = self.grid.len();
        if samples.len() != n {
            return Err(Error::Length { expected: n, got: samples.len() });
        }
        let half = n / 2;
        let mut buf: Vec<Complex64> = (0..n).map(|i| samples[(i + half) % n]).collect();
        plan.process(&mut buf);
        Ok((0..n).map(|i| buf[(i + half) % n] * scale).collect())
    }

    pub fn v_to_xi(&self, samples: &[Complex64]) -> Result<Vec<Complex64>> {
        self.centered(samples, &self.forward, self.grid.delta_v())
    }

    pub fn xi_to_v(&self, samples: &[Complex64]) -> Result<Vec<Complex64>> {
        self.centered(samples, &self.inverse, self.grid.delta_xi() / (2.0 * PI))
    }

    pub fn real_v_to_xi(&self, samples: &[f64]) -> Result<Vec<Complex64>> {
        let z: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.v_to_xi(&z)
    }

    /// Multiply by `(i xi)^order` on the xi side, i.e. differentiate on the v side.
    pub fn differentiate_v(&self, samples: &[Complex64], order: u32) -> Result<Vec<Complex64>> {
        let mut hat = self.v_to_xi(samples)?;
        for (j, z) in hat.iter_mut().enumerate() {
            *z *= Complex64::new(0.0, self.grid.node(j)).powu(order);
        }
        self.xi_to_v(&hat)
    }

    /// Band-limited interpolation of xi-side samples at an arbitrary point.
    pub fn interpolate_xi(&self, samples: &[Complex64], xi: f64) -> Result<Complex64> {
        let v = self.xi_to_v(samples)?;
        let dv = self.grid.delta_v();
        Ok((0..self.grid.len())
            .map(|m| v[m] * Complex64::from_polar(dv, -xi * self.grid.v_node(m)))
            .sum())
    }
}
