use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::backgrounds::BumpProfile;
use crate::error::{Error, Result};
use crate::spectral::{laplace_semiinf, Envelope};

const QUAD_TOL: f64 = 1e-14;
const DENOMINATOR_GUARD: f64 = 1e-12;

/// Half-line transforms of `t^p exp(-t^2/2)` at `lambda` and of `s^p sigma_hat(s)` at `lambda / gamma`.
#[derive(Clone, Copy, Debug)]
struct Moments {
    maxwell: [Complex64; 3],
    bump: [Complex64; 3],
}

impl Moments {
    fn new(gamma: f64, lambda: Complex64, bump: &BumpProfile, highest: usize) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        let mut m = Self { maxwell: [zero; 3], bump: [zero; 3] };
        for p in 1..=highest {
            let pi = p as i32;
            m.maxwell[p - 1] = laplace_semiinf(
                |t| Complex64::new(t.powi(pi) * (-t * t / 2.0).exp(), 0.0),
                lambda,
                Envelope::Gaussian { scale: 1.0 },
                QUAD_TOL,
            )?;
            m.bump[p - 1] = laplace_semiinf(
                |s| Complex64::new(s.powi(pi) * bump.sigma_hat(s), 0.0),
                lambda / gamma,
                Envelope::Gaussian { scale: bump.decay_scale },
                QUAD_TOL,
            )?;
        }
        Ok(m)
    }
}

fn normalization(gamma: f64, mass: f64, bump: &BumpProfile) -> f64 {
    1.0 + mass * gamma * gamma * bump.m_sigma
}

/// Dispersion function whose zeros are the growing modes of the bump background.
pub fn psi_eval(gamma: f64, lambda: Complex64, mass: f64, bump: &BumpProfile) -> Result<Complex64> {
    if !(gamma > 0.0) {
        return Err(Error::Domain(format!("gamma must be positive, got {gamma}")));
    }
    let m = Moments::new(gamma, lambda, bump, 1)?;
    Ok(1.0 + (m.maxwell[0] + mass * m.bump[0]) / normalization(gamma, mass, bump))
}

/// Bump amplitude at which `lambda = 0` solves the dispersion relation.
pub fn m0_anchor(gamma: f64, bump: &BumpProfile) -> Result<f64> {
    let denom = bump.b1 + gamma * gamma * bump.m_sigma;
    if !(denom < 0.0) {
        return Err(Error::Domain(format!("B1 + gamma^2 m_sigma = {denom} must be negative")));
    }
    Ok(-2.0 / denom)
}

/// Numerator, denominator and their lambda-derivatives of the continuation field.
#[derive(Clone, Copy, Debug)]
pub struct ContinuationField {
    pub numerator: Complex64,
    pub denominator: Complex64,
    pub d_numerator: Complex64,
    pub d_denominator: Complex64,
    pub psi: Complex64,
}

impl ContinuationField {
    pub fn slope(&self) -> Complex64 {
        self.numerator / self.denominator
    }

    /// `d/dlambda (N / D)`.
    pub fn slope_derivative(&self) -> Complex64 {
        (self.d_numerator * self.denominator - self.numerator * self.d_denominator) / (self.denominator * self.denominator)
    }
}

pub fn continuation_field(gamma: f64, lambda: Complex64, mass: f64, bump: &BumpProfile) -> Result<ContinuationField> {
    let m = Moments::new(gamma, lambda, bump, 3)?;
    let z = normalization(gamma, mass, bump);
    let g2m = gamma * gamma * bump.m_sigma;
    let numerator = m.bump[0] - g2m * m.maxwell[0];
    let denominator = z * (m.maxwell[1] + mass / gamma * m.bump[1]);
    let d_numerator = -m.bump[1] / gamma + g2m * m.maxwell[1];
    let d_denominator = z * (-m.maxwell[2] - mass / (gamma * gamma) * m.bump[2]);
    let psi = 1.0 + (m.maxwell[0] + mass * m.bump[0]) / z;
    Ok(ContinuationField { numerator, denominator, d_numerator, d_denominator, psi })
}

/// Right-hand side `N / D` of the eigenvalue ODE in the bump amplitude.
pub fn eigen_ode_rhs(gamma: f64, lambda: Complex64, mass: f64, bump: &BumpProfile) -> Result<Complex64> {
    let f = continuation_field(gamma, lambda, mass, bump)?;
    if f.denominator.norm() < DENOMINATOR_GUARD {
        return Err(Error::Singular(f.denominator.norm()));
    }
    Ok(f.slope())
}

/// The admissible box `0 <= Re <= delta gamma`, `|Im| <= delta gamma`, `M0 <= M <= M0 + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub gamma: f64,
    pub delta: f64,
    pub m0: f64,
}

impl Rectangle {
    pub fn new(gamma: f64, delta: f64, bump: &BumpProfile) -> Result<Self> {
        Ok(Self { gamma, delta, m0: m0_anchor(gamma, bump)? })
    }

    pub fn contains(&self, lambda: Complex64, mass: f64) -> bool {
        let side = self.delta * self.gamma;
        let slack = 1e-12 * self.gamma;
        lambda.re >= -slack
            && lambda.re <= side + slack
            && lambda.im.abs() <= side + slack
            && mass >= self.m0 - 1e-12
            && mass <= self.m0 + 1.0 + 1e-12
    }

    /// `n^3` sample points covering the box.
    pub fn samples(&self, n: usize) -> Vec<(Complex64, f64)> {
        let side = self.delta * self.gamma;
        let lin = |i: usize, lo: f64, hi: f64| if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
        let mut out = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push((Complex64::new(lin(a, 0.0, side), lin(b, -side, side)), lin(c, self.m0, self.m0 + 1.0)));
                }
            }
        }
        out
    }

    /// Sampled supremum of `|d/dlambda (N/D)|` over the box.
    pub fn lipschitz(&self, bump: &BumpProfile, n: usize) -> Result<f64> {
        let mut sup = 0.0f64;
        for (lambda, mass) in self.samples(n) {
            sup = sup.max(continuation_field(self.gamma, lambda, mass, bump)?.slope_derivative().norm());
        }
        Ok(sup)
    }

    /// Default continuation length `min(|B2| delta / (6 B1^2), 1 / (2 Lip))`.
    pub fn continuation_length(&self, bump: &BumpProfile) -> Result<f64> {
        let geometric = bump.b2.abs() * self.delta / (6.0 * bump.b1 * bump.b1);
        Ok(geometric.min(0.5 / self.lipschitz(bump, 5)?))
    }
}

pub const DEFAULT_DELTA: f64 = 0.05;
