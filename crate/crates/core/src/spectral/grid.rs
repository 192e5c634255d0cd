use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform symmetric grid in the Fourier velocity variable.
///
/// Nodes are `xi_j = -xi_max + j * delta_xi` for `j = 0..n_xi`, so the node
/// `j = n_xi / 2` is exactly zero. The conjugate velocity grid has spacing
/// `pi / xi_max` and the same number of points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiGrid {
    xi_max: f64,
    n_xi: usize,
    delta_xi: f64,
}

impl XiGrid {
    pub fn new(xi_max: f64, n_xi: usize) -> Result<Self> {
        if !(xi_max.is_finite() && xi_max > 0.0) {
            return Err(Error::Grid(format!("xi_max must be positive, got {xi_max}")));
        }
        if n_xi < 4 || !n_xi.is_multiple_of(2) {
            return Err(Error::Grid(format!("n_xi must be even and at least 4, got {n_xi}")));
        }
        Ok(Self { xi_max, n_xi, delta_xi: 2.0 * xi_max / n_xi as f64 })
    }

    /// Grid with a prescribed spacing covering at least `[-half_width, half_width]`.
    pub fn covering(half_width: f64, delta_xi: f64) -> Result<Self> {
        if !(delta_xi > 0.0) {
            return Err(Error::Grid(format!("spacing must be positive, got {delta_xi}")));
        }
        let half = (half_width / delta_xi).ceil().max(2.0) as usize;
        Self::new(half as f64 * delta_xi, 2 * half)
    }

    pub fn default_resolution() -> Self {
        Self::new(48.0, 2048).expect("default grid is valid")
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }

    pub fn len(&self) -> usize {
        self.n_xi
    }

    pub fn is_empty(&self) -> bool {
        self.n_xi == 0
    }

    pub fn delta_xi(&self) -> f64 {
        self.delta_xi
    }

    pub fn zero_index(&self) -> usize {
        self.n_xi / 2
    }

    pub fn node(&self, j: usize) -> f64 {
        (j as f64 - (self.n_xi / 2) as f64) * self.delta_xi
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_xi).map(|j| self.node(j)).collect()
    }

    /// Index of the node at `-xi_j`, absent for the unpaired left edge.
    pub fn mirror(&self, j: usize) -> Option<usize> {
        if j == 0 {
            None
        } else {
            Some(self.n_xi - j)
        }
    }

    pub fn delta_v(&self) -> f64 {
        PI / self.xi_max
    }

    pub fn v_node(&self, m: usize) -> f64 {
        (m as f64 - (self.n_xi / 2) as f64) * self.delta_v()
    }

    pub fn v_nodes(&self) -> Vec<f64> {
        (0..self.n_xi).map(|m| self.v_node(m)).collect()
    }

    /// Same extent, twice the points.
    pub fn refined(&self) -> Self {
        Self::new(self.xi_max, 2 * self.n_xi).expect("refinement of a valid grid is valid")
    }

    /// Discrete L2 norm in xi.
    pub fn norm(&self, samples: &[Complex64]) -> f64 {
        (samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.delta_xi).sqrt()
    }

    /// Discrete L2 norm on the conjugate velocity grid.
    pub fn v_norm(&self, samples: &[Complex64]) -> f64 {
        (samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.delta_v()).sqrt()
    }
}

/// Symmetric set of spatial modes `-k_max..=k_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeSet {
    k_max: usize,
}

impl ModeSet {
    pub fn new(k_max: usize) -> Result<Self> {
        if k_max == 0 {
            return Err(Error::Grid("k_max must be positive".into()));
        }
        Ok(Self { k_max })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn count(&self) -> usize {
        2 * self.k_max + 1
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        let k = self.k_max as i64;
        -k..=k
    }

    pub fn nonzero(&self) -> impl Iterator<Item = i64> {
        self.modes().filter(|&k| k != 0)
    }

    pub fn contains(&self, k: i64) -> bool {
        k.unsigned_abs() as usize <= self.k_max
    }

    pub fn index(&self, k: i64) -> usize {
        debug_assert!(self.contains(k));
        (k + self.k_max as i64) as usize
    }
}

/// Complex amplitudes `f_k(xi)` on a mode set and a xi grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    modes: ModeSet,
    grid: XiGrid,
    values: Vec<Complex64>,
    pub time: f64,
}

impl SpectralField {
    pub fn zeros(modes: ModeSet, grid: XiGrid) -> Self {
        Self { modes, grid, values: vec![Complex64::new(0.0, 0.0); modes.count() * grid.len()], time: 0.0 }
    }

    pub fn modes(&self) -> ModeSet {
        self.modes
    }

    pub fn grid(&self) -> XiGrid {
        self.grid
    }

    pub fn row(&self, k: i64) -> &[Complex64] {
        let n = self.grid.len();
        let i = self.modes.index(k);
        &self.values[i * n..(i + 1) * n]
    }

    pub fn row_mut(&mut self, k: i64) -> &mut [Complex64] {
        let n = self.grid.len();
        let i = self.modes.index(k);
        &mut self.values[i * n..(i + 1) * n]
    }

    pub fn value(&self, k: i64, j: usize) -> Complex64 {
        self.row(k)[j]
    }

    /// Density `rho_k`, the value at `xi = 0`.
    pub fn density(&self, k: i64) -> Complex64 {
        self.row(k)[self.grid.zero_index()]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Overwrite the negative modes with the conjugate mirror of the positive ones.
    pub fn mirror_negative_modes(&mut self) {
        let n = self.grid.len();
        for k in 1..=self.modes.k_max as i64 {
            let pos: Vec<Complex64> = self.row(k).to_vec();
            let neg = self.row_mut(-k);
            neg[0] = Complex64::new(0.0, 0.0);
            for j in 1..n {
                neg[n - j] = pos[j].conj();
            }
        }
    }

    /// Average every value with the conjugate of its mirror partner.
    pub fn symmetrize(&mut self) {
        let n = self.grid.len();
        for k in 0..=self.modes.k_max as i64 {
            for j in 1..n {
                let mj = n - j;
                if k == 0 && mj < j {
                    continue;
                }
                let a = self.row(k)[j];
                let b = self.row(-k)[mj].conj();
                let avg = 0.5 * (a + b);
                self.row_mut(k)[j] = avg;
                self.row_mut(-k)[mj] = avg.conj();
            }
            if k == 0 {
                let z = self.grid.zero_index();
                let v = self.row(0)[z];
                self.row_mut(0)[z] = Complex64::new(v.re, 0.0);
            }
        }
    }

    /// Largest violation of `value(-k, -xi) = conj(value(k, xi))`.
    pub fn reality_defect(&self) -> f64 {
        let n = self.grid.len();
        let mut worst = 0.0f64;
        for k in self.modes.modes() {
            for j in 1..n {
                let d = (self.row(k)[j] - self.row(-k)[n - j].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Largest edge magnitude relative to the field maximum, over both edges of every mode.
    pub fn edge_spill(&self) -> (i64, f64) {
        let scale = self.max_abs();
        if scale == 0.0 {
            return (0, 0.0);
        }
        let n = self.grid.len();
        let mut worst = (0, 0.0);
        for k in self.modes.modes() {
            let r = self.row(k);
            let level = r[0].norm().max(r[1].norm()).max(r[n - 1].norm()) / scale;
            if level > worst.1 {
                worst = (k, level);
            }
        }
        worst
    }

    pub fn scale(&mut self, factor: f64) {
        for z in &mut self.values {
            *z *= factor;
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Populate a field from a sampler and enforce reality symmetry by symmetrization.
pub fn build_field<F>(modes: ModeSet, grid: XiGrid, sampler: F) -> Result<SpectralField>
where
    F: Fn(i64, f64) -> Complex64 + Sync,
{
    let n = grid.len();
    let mut field = SpectralField::zeros(modes, grid);
    let rows: Vec<(i64, Vec<Complex64>)> = modes
        .modes()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| (k, (0..n).map(|j| sampler(k, grid.node(j))).collect()))
        .collect();
    for (k, row) in rows {
        if let Some(j) = row.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { k, xi: grid.node(j) });
        }
        field.row_mut(k).copy_from_slice(&row);
    }
    field.symmetrize();
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_symmetric_and_contain_zero() {
        let g = XiGrid::new(48.0, 2048).unwrap();
        assert_eq!(g.node(g.zero_index()), 0.0);
        for j in 1..g.len() {
            assert_eq!(g.node(j), -g.node(g.mirror(j).unwrap()));
        }
        assert!((g.len() as f64 * g.delta_xi() - 2.0 * g.xi_max()).abs() < 1e-12);
    }

    #[test]
    fn rejects_odd_point_count() {
        assert!(XiGrid::new(10.0, 101).is_err());
    }

    #[test]
    fn zero_sampler_gives_zero_field() {
        let f = build_field(ModeSet::new(2).unwrap(), XiGrid::new(8.0, 64).unwrap(), |_, _| Complex64::new(0.0, 0.0))
            .unwrap();
        assert_eq!(f.max_abs(), 0.0);
    }

    #[test]
    fn maxwellian_zero_mode_is_exactly_symmetric() {
        let f = build_field(ModeSet::new(1).unwrap(), XiGrid::new(8.0, 64).unwrap(), |k, xi| {
            if k == 0 {
                Complex64::new((-xi * xi / 2.0).exp(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap();
        assert_eq!(f.reality_defect(), 0.0);
        assert_eq!(f.density(0).re, 1.0);
    }

    #[test]
    fn odd_imaginary_mode_obeys_mirror_rule() {
        let f = build_field(ModeSet::new(1).unwrap(), XiGrid::new(8.0, 64).unwrap(), |k, xi| {
            if k == 1 {
                Complex64::new(0.0, xi)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap();
        assert_eq!(f.reality_defect(), 0.0);
        let g = f.grid();
        let j = 40;
        assert_eq!(f.value(-1, g.mirror(j).unwrap()), f.value(1, j).conj());
    }

    #[test]
    fn non_finite_sampler_is_rejected_with_coordinates() {
        let err = build_field(ModeSet::new(1).unwrap(), XiGrid::new(8.0, 64).unwrap(), |k, xi| {
            if k == 1 && xi == 1.0 {
                Complex64::new(f64::NAN, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap_err();
        match err {
            Error::NonFinite { k, xi } => {
                assert_eq!(k, 1);
                assert_eq!(xi, 1.0);
            }
            other => panic!("unexpected error {other}"),
        }
    }
}
