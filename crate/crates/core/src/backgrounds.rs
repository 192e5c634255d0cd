//! Homogeneous profiles: the Maxwellian, the bump, their normalized pieces and
//! the exact collisional relaxation of the bump.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{integrate_real, DEFAULT_TOL};

type Shape = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Even bump described by its transform `sigma_hat(t)`.
#[derive(Clone)]
pub struct BumpProfile {
    sigma_hat: Shape,
    /// Scale beyond which `sigma_hat` is Gaussian-small.
    pub decay_scale: f64,
    pub m_sigma: f64,
    pub b1: f64,
    pub b2: f64,
    /// `sup_t |t sigma_hat(t)|`.
    pub sup_t_sigma: f64,
}

impl fmt::Debug for BumpProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BumpProfile")
            .field("m_sigma", &self.m_sigma)
            .field("b1", &self.b1)
            .field("b2", &self.b2)
            .finish()
    }
}

/// `sigma_hat(t) = (t^2 - 4) exp(-t^2 / 2)`.
pub fn default_bump() -> BumpProfile {
    let half_pi_sqrt = (std::f64::consts::PI / 2.0).sqrt();
    BumpProfile {
        sigma_hat: Arc::new(|t: f64| (t * t - 4.0) * (-t * t / 2.0).exp()),
        decay_scale: 1.0,
        m_sigma: -4.0,
        b1: 2.0 - 4.0,
        b2: (3.0 - 4.0) * half_pi_sqrt,
        sup_t_sigma: sup_abs(|t| t * (t * t - 4.0) * (-t * t / 2.0).exp(), 12.0),
    }
}

fn sup_abs<F: Fn(f64) -> f64>(f: F, reach: f64) -> f64 {
    let n = 200_000;
    (0..=n).map(|i| f(reach * i as f64 / n as f64).abs()).fold(0.0, f64::max)
}

impl BumpProfile {
    /// Accept a user transform after checking parity and the sign conditions on its moments.
    pub fn custom<F>(sigma_hat: F, decay_scale: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let reach = 12.0 * decay_scale;
        for i in 1..50 {
            let t = reach * i as f64 / 50.0;
            let (a, b) = (sigma_hat(t), sigma_hat(-t));
            if (a - b).abs() > 1e-12 * (1.0 + a.abs()) {
                return Err(Error::Domain(format!("bump transform is not even at t={t}")));
            }
        }
        let b1 = integrate_real(|t| t * sigma_hat(t), 0.0, reach, DEFAULT_TOL)?;
        let b2 = integrate_real(|t| t * t * sigma_hat(t), 0.0, reach, DEFAULT_TOL)?;
        if !(b1 < 0.0 && b2 < 0.0) {
            return Err(Error::Domain(format!("bump moments need B1 < 0 and B2 < 0, got {b1}, {b2}")));
        }
        let m_sigma = sigma_hat(0.0);
        let sup_t_sigma = sup_abs(|t| t * sigma_hat(t), reach);
        Ok(Self { sigma_hat: Arc::new(sigma_hat), decay_scale, m_sigma, b1, b2, sup_t_sigma })
    }

    pub fn sigma_hat(&self, t: f64) -> f64 {
        (self.sigma_hat)(t)
    }

    /// Largest admissible `gamma` from the four smallness conditions.
    pub fn gamma0(&self) -> f64 {
        let b1 = self.b1.abs();
        let b2 = self.b2.abs();
        let m = self.m_sigma.abs();
        let mut g = 1.0f64;
        if m > 0.0 {
            g = g.min((b1 / (4.0 * m)).sqrt());
            g = g.min((3.0 * b1 / ((3.0 * b1 + 8.0) * m)).sqrt());
        }
        g.min(0.6 * (2.0 / std::f64::consts::PI).sqrt() * b2 / b1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Mu,
    Mu1,
    Mu2,
    F0,
}

/// Maxwellian plus a scaled bump, normalized to unit mass.
#[derive(Clone, Debug)]
pub struct BackgroundSet {
    pub mass: f64,
    pub gamma: f64,
    pub bump: BumpProfile,
}

impl BackgroundSet {
    pub fn new(mass: f64, gamma: f64, bump: BumpProfile) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Domain(format!("bump amplitude must be positive, got {mass}")));
        }
        let g0 = bump.gamma0();
        if !(gamma > 0.0 && gamma <= g0) {
            return Err(Error::Domain(format!("gamma={gamma} outside (0, {g0}]")));
        }
        let set = Self { mass, gamma, bump };
        let z = set.normalization();
        if !(0.5..=2.0).contains(&z) {
            return Err(Error::Domain(format!("normalization {z} outside [1/2, 2]")));
        }
        Ok(set)
    }

    /// `1 + M gamma^2 m_sigma`.
    pub fn normalization(&self) -> f64 {
        1.0 + self.mass * self.gamma * self.gamma * self.bump.m_sigma
    }

    pub fn hat(&self, which: Profile, xi: f64) -> f64 {
        let z = self.normalization();
        let maxwell = (-xi * xi / 2.0).exp();
        let bump = self.mass * self.gamma * self.gamma * self.bump.sigma_hat(self.gamma * xi);
        match which {
            Profile::Mu => maxwell,
            Profile::Mu1 => maxwell / z,
            Profile::Mu2 => bump / z,
            Profile::F0 => (maxwell + bump) / z,
        }
    }

    /// Upper bound `(1 + M gamma^2 sup|sigma_hat|) / normalization` for the f0 transform.
    pub fn f0_bound(&self, sup_sigma: f64) -> f64 {
        (1.0 + self.mass * self.gamma * self.gamma * sup_sigma) / self.normalization()
    }
}

/// Exact Fokker-Planck evolution of the normalized bump, in xi.
pub fn fe_hat_exact(set: &BackgroundSet, nu: f64, t: f64, xi: f64) -> f64 {
    let spread = -0.5 * (-(-2.0 * nu * t).exp_m1()) * xi * xi;
    let g = set.gamma;
    spread.exp() * set.mass * g * g * set.bump.sigma_hat((-nu * t).exp() * g * xi) / set.normalization()
}
