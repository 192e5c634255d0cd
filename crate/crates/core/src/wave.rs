//! One-dimensional wave operator `D_k[f] = f + (Q/P) H[f]`, its inverse, and
//! residual checks against the linearized Vlasov and Fokker-Planck operators.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::backgrounds::BackgroundSet;
use crate::error::{Error, Result};
use crate::penrose::{PenroseBackground, PenroseTable};
use crate::spectral::{edge_level, FourierPair, VelocityHilbert, XiGrid, DEFAULT_SPILL_TOL};

/// A Penrose table paired with the velocity-side Hilbert transform of its grid.
#[derive(Clone, Debug)]
pub struct WaveOperatorHandle {
    pub table: PenroseTable,
    hilbert: Arc<VelocityHilbert>,
    /// The profile whose derivative enters the intertwining relation, or `None` for the identity.
    background: Option<PenroseBackground>,
    pub spill_tol: f64,
}

impl WaveOperatorHandle {
    pub fn new(k: i64, grid: XiGrid, background: PenroseBackground) -> Result<Self> {
        Self::with_hilbert(k, Arc::new(VelocityHilbert::new(grid)), background)
    }

    /// Share one Hilbert transform between handles on the same grid.
    pub fn with_hilbert(k: i64, hilbert: Arc<VelocityHilbert>, background: PenroseBackground) -> Result<Self> {
        let table = PenroseTable::new(k, &hilbert.grid(), background)?;
        Ok(Self { table, hilbert, background: Some(background), spill_tol: DEFAULT_SPILL_TOL })
    }

    pub fn maxwellian(k: i64, grid: XiGrid) -> Result<Self> {
        Self::new(k, grid, PenroseBackground::Maxwellian)
    }

    pub fn weighted(k: i64, grid: XiGrid, set: &BackgroundSet) -> Result<Self> {
        Self::new(k, grid, PenroseBackground::for_set(set))
    }

    /// Handle with `P = 1`, `Q = 0`, so that `D` is the identity.
    pub fn identity(k: i64, grid: XiGrid) -> Result<Self> {
        let mut h = Self::maxwellian(k, grid)?;
        let n = grid.len();
        h.table.p = vec![1.0; n];
        h.table.q = vec![0.0; n];
        h.table.w = vec![1.0; n];
        h.table.kern = vec![0.0; n];
        h.background = None;
        Ok(h)
    }

    pub fn k(&self) -> i64 {
        self.table.k
    }

    pub fn grid(&self) -> XiGrid {
        self.hilbert.grid()
    }

    pub fn pair(&self) -> &FourierPair {
        self.hilbert.pair()
    }

    pub fn hilbert(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        self.hilbert.apply(f)
    }

    fn check(&self, f: &[Complex64]) -> Result<()> {
        let n = self.grid().len();
        if f.len() != n {
            return Err(Error::Length { expected: n, got: f.len() });
        }
        let level = edge_level(f);
        if level > self.spill_tol {
            return Err(Error::Spill { k: self.k(), level, tol: self.spill_tol });
        }
        Ok(())
    }

    /// `mu_1'(v)` for the profile of this handle, zero for the identity.
    fn background_slope(&self, v: f64) -> f64 {
        match self.background {
            None => 0.0,
            Some(b) => -v * (-v * v / 2.0).exp() / ((2.0 * PI).sqrt() * b.normalization()),
        }
    }
}

pub fn apply_wave(h: &WaveOperatorHandle, f: &[Complex64]) -> Result<Vec<Complex64>> {
    h.check(f)?;
    let hf = h.hilbert(f)?;
    Ok((0..f.len()).map(|m| f[m] + h.table.q[m] / h.table.p[m] * hf[m]).collect())
}

/// `g - Q (H[P g / W] + (Q / W) g)`.
pub fn apply_inverse_wave(h: &WaveOperatorHandle, g: &[Complex64]) -> Result<Vec<Complex64>> {
    h.check(g)?;
    let t = &h.table;
    let weighted: Vec<Complex64> = (0..g.len()).map(|m| g[m] * (t.p[m] / t.w[m])).collect();
    let hw = h.hilbert(&weighted)?;
    Ok((0..g.len()).map(|m| g[m] - t.q[m] * (hw[m] + t.q[m] / t.w[m] * g[m])).collect())
}

/// `|| D[v f - k^-2 (int f) mu_1'] - v D[f] || / || f ||`.
pub fn intertwining_residual(h: &WaveOperatorHandle, f: &[Complex64]) -> Result<f64> {
    let grid = h.grid();
    let scale = grid.v_norm(f);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let v = grid.v_nodes();
    let mass: Complex64 = f.iter().sum::<Complex64>() * grid.delta_v();
    let k2 = (h.k() * h.k()) as f64;
    let moved: Vec<Complex64> = (0..f.len()).map(|m| v[m] * f[m] - mass / k2 * h.background_slope(v[m])).collect();
    let left = apply_wave(h, &moved)?;
    let df = apply_wave(h, f)?;
    let diff: Vec<Complex64> = (0..f.len()).map(|m| left[m] - v[m] * df[m]).collect();
    Ok(grid.v_norm(&diff) / scale)
}

/// `f'' + (v f)'` by spectral differentiation.
pub fn fokker_planck_v(pair: &FourierPair, f: &[Complex64]) -> Result<Vec<Complex64>> {
    let v = pair.grid().v_nodes();
    let second = pair.differentiate_v(f, 2)?;
    let vf: Vec<Complex64> = f.iter().zip(&v).map(|(z, x)| z * x).collect();
    let drift = pair.differentiate_v(&vf, 1)?;
    Ok(second.iter().zip(&drift).map(|(a, b)| a + b).collect())
}

/// `D[L f] - L[D f]`.
pub fn commutator_fp(h: &WaveOperatorHandle, f: &[Complex64]) -> Result<Vec<Complex64>> {
    h.check(f)?;
    let lf = fokker_planck_v(h.pair(), f)?;
    let dlf = apply_wave(h, &lf)?;
    let df = apply_wave(h, f)?;
    let ldf = fokker_planck_v(h.pair(), &df)?;
    Ok(dlf.iter().zip(&ldf).map(|(a, b)| a - b).collect())
}

/// `|| <v>^weight f ||` on the velocity grid.
pub fn weighted_v_norm(grid: &XiGrid, f: &[Complex64], weight: f64) -> f64 {
    let dv = grid.delta_v();
    let v = grid.v_nodes();
    (f.iter().zip(&v).map(|(z, x)| (1.0 + x * x).powf(weight) * z.norm_sqr()).sum::<f64>() * dv).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packet(grid: &XiGrid, centre: f64, width: f64, phase: f64) -> Vec<Complex64> {
        grid.v_nodes()
            .iter()
            .map(|&v| Complex64::from_polar((-(v - centre) * (v - centre) / (2.0 * width * width)).exp(), phase * v))
            .collect()
    }

    #[test]
    fn zero_maps_to_zero() {
        let h = WaveOperatorHandle::maxwellian(1, XiGrid::default_resolution()).unwrap();
        let z = vec![Complex64::new(0.0, 0.0); h.grid().len()];
        assert!(apply_wave(&h, &z).unwrap().iter().all(|x| x.norm() == 0.0));
        assert!(apply_inverse_wave(&h, &z).unwrap().iter().all(|x| x.norm() == 0.0));
        assert_eq!(intertwining_residual(&h, &z).unwrap(), 0.0);
    }

    #[test]
    fn maxwellian_keeps_its_value_at_the_origin() {
        let grid = XiGrid::default_resolution();
        let h = WaveOperatorHandle::maxwellian(2, grid).unwrap();
        let mu: Vec<Complex64> =
            grid.v_nodes().iter().map(|&v| Complex64::new((-v * v / 2.0).exp() / (2.0 * PI).sqrt(), 0.0)).collect();
        let d = apply_wave(&h, &mu).unwrap();
        let z = grid.zero_index();
        assert!((d[z] - mu[z]).norm() < 1e-15);
    }

    #[test]
    fn round_trip_on_packets() {
        let grid = XiGrid::default_resolution();
        let f = packet(&grid, 0.4, 1.3, 0.7);
        for k in 1..=4 {
            let h = WaveOperatorHandle::maxwellian(k, grid).unwrap();
            let back = apply_inverse_wave(&h, &apply_wave(&h, &f).unwrap()).unwrap();
            let err = back.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-8, "k={k}: {err}");
        }
    }

    #[test]
    fn identity_handle_commutes_with_collisions() {
        let grid = XiGrid::default_resolution();
        let h = WaveOperatorHandle::identity(1, grid).unwrap();
        // The unit Maxwellian lies in the kernel of L, so an off-centre packet is used.
        let f = packet(&grid, 0.4, 1.3, 0.7);
        let c = commutator_fp(&h, &f).unwrap();
        assert!(c.iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn spill_is_rejected() {
        let grid = XiGrid::new(8.0, 64).unwrap();
        let h = WaveOperatorHandle::maxwellian(1, grid).unwrap();
        let flat = vec![Complex64::new(1.0, 0.0); 64];
        assert!(matches!(apply_wave(&h, &flat), Err(Error::Spill { .. })));
    }
}
