use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dispersion::{continuation_field, psi_eval, Rectangle, DEFAULT_DELTA};
use crate::backgrounds::BumpProfile;
use crate::error::{Error, Result};

const NEWTON_ITERATIONS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuationOptions {
    /// Half-width of the admissible rectangle in units of gamma.
    pub delta: f64,
    /// Number of RK4 steps from the anchor to the target amplitude.
    pub steps: usize,
    /// Target for `|Psi|` after polishing.
    pub tol: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self { delta: DEFAULT_DELTA, steps: 32, tol: 1e-12 }
    }
}

/// Growing eigenvalue of the bump background at one amplitude.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSolution {
    pub gamma: f64,
    pub mass: f64,
    pub m0: f64,
    /// Root of the dispersion relation.
    pub lambda: Complex64,
    /// Unpolished RK4 endpoint.
    pub raw_lambda: Complex64,
    pub psi_residual: f64,
    /// Polished `(M, lambda)` samples from the anchor to the target.
    pub ode_path: Vec<(f64, Complex64)>,
    pub rectangle: Rectangle,
}

impl EigenSolution {
    /// Largest `|Psi|` along the stored path.
    pub fn path_residual(&self, bump: &BumpProfile) -> Result<f64> {
        let mut worst = 0.0f64;
        for &(m, lambda) in &self.ode_path {
            worst = worst.max(psi_eval(self.gamma, lambda, m, bump)?.norm());
        }
        Ok(worst)
    }

    /// `lambda_r / ((M - M0) gamma)`.
    pub fn normalized_rate(&self) -> f64 {
        self.lambda.re / ((self.mass - self.m0) * self.gamma)
    }
}

/// Newton iteration on `Psi(lambda, M) = 0` with `d Psi / d lambda = -D / Z^2`.
pub fn polish_root(gamma: f64, mass: f64, start: Complex64, bump: &BumpProfile, tol: f64) -> Result<(Complex64, f64)> {
    let z = 1.0 + mass * gamma * gamma * bump.m_sigma;
    let mut lambda = start;
    let mut residual = f64::INFINITY;
    for _ in 0..NEWTON_ITERATIONS {
        let field = continuation_field(gamma, lambda, mass, bump)?;
        residual = field.psi.norm();
        if residual <= tol {
            return Ok((lambda, residual));
        }
        let derivative = -field.denominator / (z * z);
        if derivative.norm() == 0.0 {
            return Err(Error::Singular(0.0));
        }
        let update = field.psi / derivative;
        lambda -= update;
        if update.norm() <= 1e-15 * lambda.norm().max(1e-300) {
            let r = psi_eval(gamma, lambda, mass, bump)?.norm();
            if r <= tol {
                return Ok((lambda, r));
            }
            return Err(Error::Stagnation(r));
        }
    }
    Err(Error::Stagnation(residual))
}

fn checked_rhs(rect: &Rectangle, lambda: Complex64, mass: f64, bump: &BumpProfile) -> Result<Complex64> {
    if !rect.contains(lambda, mass) {
        return Err(Error::LeftRectangle { mass, re: lambda.re, im: lambda.im });
    }
    super::dispersion::eigen_ode_rhs(rect.gamma, lambda, mass, bump)
}

/// Integrate `d lambda / dM = N / D` from `(M0, 0)` to `M_target` and polish the root at every step.
pub fn continue_eigenvalue(gamma: f64, m_target: f64, bump: &BumpProfile, options: ContinuationOptions) -> Result<EigenSolution> {
    if gamma > bump.gamma0() {
        return Err(Error::Domain(format!("gamma={gamma} exceeds gamma0={}", bump.gamma0())));
    }
    let rect = Rectangle::new(gamma, options.delta, bump)?;
    let m0 = rect.m0;
    if !(m_target > m0 && m_target <= m0 + 1.0) {
        return Err(Error::Domain(format!("target amplitude {m_target} outside (M0, M0 + 1] with M0={m0}")));
    }
    let steps = options.steps.max(1);
    let h = (m_target - m0) / steps as f64;
    let mut raw = Complex64::new(0.0, 0.0);
    let mut path = vec![(m0, raw)];
    for i in 0..steps {
        let m = m0 + i as f64 * h;
        let k1 = checked_rhs(&rect, raw, m, bump)?;
        let k2 = checked_rhs(&rect, raw + 0.5 * h * k1, m + 0.5 * h, bump)?;
        let k3 = checked_rhs(&rect, raw + 0.5 * h * k2, m + 0.5 * h, bump)?;
        let k4 = checked_rhs(&rect, raw + h * k3, m + h, bump)?;
        raw += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let m_next = if i + 1 == steps { m_target } else { m0 + (i + 1) as f64 * h };
        if !rect.contains(raw, m_next) {
            return Err(Error::LeftRectangle { mass: m_next, re: raw.re, im: raw.im });
        }
        let (root, _) = polish_root(gamma, m_next, raw, bump, options.tol)?;
        path.push((m_next, root));
    }
    let (lambda, psi_residual) = polish_root(gamma, m_target, raw, bump, options.tol)?;
    if !rect.contains(lambda, m_target) || lambda.re <= 0.0 {
        return Err(Error::LeftRectangle { mass: m_target, re: lambda.re, im: lambda.im });
    }
    Ok(EigenSolution { gamma, mass: m_target, m0, lambda, raw_lambda: raw, psi_residual, ode_path: path, rectangle: rect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgrounds::default_bump;

    #[test]
    fn path_starts_at_zero_and_stays_on_the_root() {
        let b = default_bump();
        let gamma = 0.05;
        let rect = Rectangle::new(gamma, DEFAULT_DELTA, &b).unwrap();
        let eps = rect.continuation_length(&b).unwrap();
        let sol = continue_eigenvalue(gamma, rect.m0 + eps, &b, ContinuationOptions::default()).unwrap();
        assert_eq!(sol.ode_path[0].1, Complex64::new(0.0, 0.0));
        assert!(sol.path_residual(&b).unwrap() <= 1e-10);
        assert!(sol.lambda.re > 0.0);
        assert!(sol.lambda.im.abs() < 1e-12);
    }

    #[test]
    fn halving_the_step_barely_moves_the_raw_endpoint() {
        let b = default_bump();
        let gamma = 0.05;
        let rect = Rectangle::new(gamma, DEFAULT_DELTA, &b).unwrap();
        let target = rect.m0 + rect.continuation_length(&b).unwrap();
        let coarse = continue_eigenvalue(gamma, target, &b, ContinuationOptions::default()).unwrap();
        let opts = ContinuationOptions { steps: 64, ..Default::default() };
        let fine = continue_eigenvalue(gamma, target, &b, opts).unwrap();
        assert!((coarse.raw_lambda - fine.raw_lambda).norm() < 1e-8 * fine.raw_lambda.norm());
    }

    #[test]
    fn target_outside_the_rectangle_is_rejected() {
        let b = default_bump();
        let m0 = crate::penrose::m0_anchor(0.05, &b).unwrap();
        assert!(continue_eigenvalue(0.05, m0 - 0.1, &b, ContinuationOptions::default()).is_err());
        let r = continue_eigenvalue(0.05, m0 + 1.0, &b, ContinuationOptions::default());
        assert!(matches!(r, Err(Error::LeftRectangle { .. })));
    }
}
