use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backgrounds::BackgroundSet;
use crate::error::{Error, Result};
use crate::spectral::{dawson, laplace_semiinf, Envelope, XiGrid, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PenroseValues {
    pub p: f64,
    pub q: f64,
    pub w: f64,
    pub kern: f64,
}

impl PenroseValues {
    fn from_pq(p: f64, q: f64) -> Self {
        let w = p * p + q * q;
        Self { p, q, w, kern: p / w - 1.0 }
    }
}

/// Which homogeneous profile the wave operator is built on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PenroseBackground {
    Maxwellian,
    /// Maxwellian divided by the given normalization `1 + M gamma^2 m_sigma`.
    Normalized { normalization: f64 },
}

impl PenroseBackground {
    pub fn for_set(set: &BackgroundSet) -> Self {
        Self::Normalized { normalization: set.normalization() }
    }

    pub fn normalization(&self) -> f64 {
        match *self {
            Self::Maxwellian => 1.0,
            Self::Normalized { normalization } => normalization,
        }
    }
}

fn check_mode(k: i64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("Penrose functions are defined for k != 0".into()));
    }
    Ok((k * k) as f64)
}

/// Penrose functions at one point, with the Fourier integral evaluated by quadrature.
pub fn penrose_eval(k: i64, u: f64) -> Result<PenroseValues> {
    let k2 = check_mode(k)?;
    let integral = laplace_semiinf(
        |x| Complex64::new(x * (-x * x / 2.0).exp(), 0.0),
        Complex64::new(0.0, -u),
        Envelope::Gaussian { scale: 1.0 },
        DEFAULT_TOL * 1e-1,
    )?;
    let p = 1.0 + integral.re / k2;
    let q = (PI / 2.0).sqrt() * u * (-u * u / 2.0).exp() / k2;
    Ok(PenroseValues::from_pq(p, q))
}

/// Closed form through Dawson's integral, optionally weighted by a normalization.
pub fn penrose_closed_form(k: i64, u: f64, background: PenroseBackground) -> Result<PenroseValues> {
    let k2 = check_mode(k)?;
    let z = background.normalization();
    let p = 1.0 + (1.0 - 2f64.sqrt() * u * dawson(u / 2f64.sqrt())) / (k2 * z);
    let q = (PI / 2.0).sqrt() * u * (-u * u / 2.0).exp() / (k2 * z);
    Ok(PenroseValues::from_pq(p, q))
}

/// Sampled Penrose functions on the velocity nodes of a grid.
#[derive(Clone, Debug)]
pub struct PenroseTable {
    pub k: i64,
    pub background: PenroseBackground,
    pub u: Vec<f64>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub w: Vec<f64>,
    pub kern: Vec<f64>,
}

impl PenroseTable {
    pub fn new(k: i64, grid: &XiGrid, background: PenroseBackground) -> Result<Self> {
        check_mode(k)?;
        let u = grid.v_nodes();
        let vals: Vec<PenroseValues> =
            u.iter().map(|&x| penrose_closed_form(k, x, background)).collect::<Result<_>>()?;
        let table = Self {
            k,
            background,
            p: vals.iter().map(|v| v.p).collect(),
            q: vals.iter().map(|v| v.q).collect(),
            w: vals.iter().map(|v| v.w).collect(),
            kern: vals.iter().map(|v| v.kern).collect(),
            u,
        };
        if table.min_p() <= 0.0 {
            return Err(Error::Domain(format!("P_k is not positive for k={k}")));
        }
        Ok(table)
    }

    pub fn maxwellian(k: i64, grid: &XiGrid) -> Result<Self> {
        Self::new(k, grid, PenroseBackground::Maxwellian)
    }

    pub fn weighted(k: i64, grid: &XiGrid, set: &BackgroundSet) -> Result<Self> {
        Self::new(k, grid, PenroseBackground::for_set(set))
    }

    /// Tables for every nonzero mode up to `k_max`, built in parallel.
    pub fn for_modes(k_max: usize, grid: &XiGrid, background: PenroseBackground) -> Result<Vec<Self>> {
        (1..=k_max as i64).into_par_iter().map(|k| Self::new(k, grid, background)).collect()
    }

    pub fn min_p(&self) -> f64 {
        self.p.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest of `|W - P^2 - Q^2|`.
    pub fn identity_defect(&self) -> f64 {
        (0..self.u.len()).map(|i| (self.w[i] - self.p[i] * self.p[i] - self.q[i] * self.q[i]).abs()).fold(0.0, f64::max)
    }

    /// Largest parity violation over P, Q and K.
    pub fn parity_defect(&self) -> f64 {
        let n = self.u.len();
        (1..n)
            .map(|i| {
                let m = n - i;
                (self.p[i] - self.p[m]).abs().max((self.q[i] + self.q[m]).abs()).max((self.kern[i] - self.kern[m]).abs())
            })
            .fold(0.0, f64::max)
    }

    pub fn sup_kernel(&self) -> f64 {
        self.kern.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}
