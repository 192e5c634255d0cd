use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::characteristics::{s_coll, t_ap, volterra_kernel};
use crate::backgrounds::BackgroundSet;
use crate::error::{Error, Result};

/// Damped density equation `theta = H e^{-a t} + int_0^t e^{-a (t - tau)} K(t - tau) theta(tau) dtau`, `a = C0 gamma`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolterraProblem {
    pub k: i64,
    pub nu: f64,
    pub gamma: f64,
    pub c0: f64,
    pub dt_v: f64,
    /// Undamped forcing `H_k(t_n)`.
    pub forcing: Vec<Complex64>,
    pub kernel: Vec<f64>,
    pub solution: Option<Vec<Complex64>>,
}

impl VolterraProblem {
    /// Samples on `t_n = n dt_v` up to `t_end`, with forcing `S_k(t) g_in(k t_ap)`.
    pub fn for_background<F>(
        k: i64,
        set: &BackgroundSet,
        nu: f64,
        c0: f64,
        dt_v: f64,
        t_end: f64,
        initial_hat: F,
    ) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        if k == 0 {
            return Err(Error::Domain("the density equation is posed for k != 0".into()));
        }
        if !(dt_v > 0.0 && t_end >= 0.0) {
            return Err(Error::Config(format!("need dt_v > 0 and t_end >= 0, got {dt_v}, {t_end}")));
        }
        let steps = (t_end / dt_v).round() as usize;
        let times: Vec<f64> = (0..=steps).map(|n| n as f64 * dt_v).collect();
        let kernel = times.iter().map(|&t| volterra_kernel(k, t, set, nu)).collect();
        let forcing = times.iter().map(|&t| s_coll(t, k, nu) * initial_hat(k as f64 * t_ap(t, nu))).collect();
        Ok(Self { k, nu, gamma: set.gamma, c0, dt_v, forcing, kernel, solution: None })
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.forcing.len()).map(|n| n as f64 * self.dt_v).collect()
    }

    /// `theta_n e^{C0 gamma t_n}`, the density itself.
    pub fn density(&self) -> Option<Vec<Complex64>> {
        let a = self.c0 * self.gamma;
        self.solution
            .as_ref()
            .map(|s| s.iter().enumerate().map(|(n, z)| z * (a * n as f64 * self.dt_v).exp()).collect())
    }
}

/// Trapezoidal product marching; explicit whenever `K(0) = 0`.
pub fn solve_volterra(p: &mut VolterraProblem) -> Result<Vec<Complex64>> {
    if p.kernel.len() != p.forcing.len() {
        return Err(Error::Length { expected: p.forcing.len(), got: p.kernel.len() });
    }
    let n = p.forcing.len();
    let a = p.c0 * p.gamma;
    let h = p.dt_v;
    let damped: Vec<f64> = (0..n).map(|i| (-a * i as f64 * h).exp() * p.kernel[i]).collect();
    let mut theta = Vec::with_capacity(n);
    let lead = 1.0 - 0.5 * h * damped.first().copied().unwrap_or(0.0);
    if lead == 0.0 {
        return Err(Error::Singular(0.0));
    }
    for i in 0..n {
        let mut acc = p.forcing[i] * (-a * i as f64 * h).exp();
        if i > 0 {
            let mut sum = 0.5 * damped[i] * theta[0];
            for j in 1..i {
                sum += damped[i - j] * theta[j];
            }
            acc += h * sum;
        }
        let value = acc / lead;
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFinite { k: p.k, xi: i as f64 * h });
        }
        theta.push(value);
    }
    p.solution = Some(theta.clone());
    Ok(theta)
}
