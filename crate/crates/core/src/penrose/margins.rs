use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tables::{penrose_closed_form, PenroseBackground};
use crate::backgrounds::BackgroundSet;
use crate::error::{Error, Result};
use crate::evolution::volterra_kernel;
use crate::spectral::{integrate_real, laplace_semiinf, Envelope, ModeSet};

/// `|w'(0)| + integral |w''|` for `w(t) = t exp(-t^2/2)`.
const MAXWELL_PARTS_CONSTANT: f64 = 2.892_520_640_593_72;

/// Uniform scan of the imaginary axis `[-half_width, half_width]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyScan {
    pub half_width: f64,
    pub points: usize,
}

impl FrequencyScan {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0) || points < 2 {
            return Err(Error::Config("frequency scan needs a positive width and two points".into()));
        }
        Ok(Self { half_width, points })
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.points).map(|i| -self.half_width + 2.0 * self.half_width * i as f64 / (self.points - 1) as f64).collect()
    }

    /// Twice as many intervals over the same segment.
    pub fn refined(&self) -> Self {
        Self { half_width: self.half_width, points: 2 * self.points - 1 }
    }
}

impl Default for FrequencyScan {
    fn default() -> Self {
        Self { half_width: 20.0, points: 4001 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    /// Minimum of `|1 - kernel transform|` over the scanned segment.
    pub margin: f64,
    pub k: i64,
    pub lambda_i: f64,
    /// Lower bound for the margin beyond the scanned segment.
    pub tail_bound: f64,
}

impl MarginReport {
    /// The smaller of the scanned minimum and the tail bound.
    pub fn certified(&self) -> f64 {
        self.margin.min(self.tail_bound)
    }
}

fn fold_minimum(cells: Vec<(i64, f64, f64)>) -> (i64, f64, f64) {
    cells.into_iter().fold((0, 0.0, f64::INFINITY), |a, b| if b.2 < a.2 { b } else { a })
}

/// Penrose margin of the Maxwellian on the imaginary axis: `sqrt(W_k(lambda_i / |k|))`.
pub fn penrose_margin_maxwellian(modes: ModeSet, scan: FrequencyScan) -> Result<MarginReport> {
    let freqs = scan.frequencies();
    let cells: Vec<(i64, f64, f64)> = (1..=modes.k_max() as i64)
        .into_par_iter()
        .map(|k| -> Result<Vec<(i64, f64, f64)>> {
            freqs
                .iter()
                .map(|&li| {
                    let v = penrose_closed_form(k, li / k as f64, PenroseBackground::Maxwellian)?;
                    Ok((k, li, v.w.sqrt()))
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let (k, lambda_i, margin) = fold_minimum(cells);
    if !(margin > 0.0) {
        return Err(Error::Margin { k, lambda_i, margin });
    }
    let tail_bound = 1.0 - MAXWELL_PARTS_CONSTANT / (scan.half_width * scan.half_width);
    Ok(MarginReport { margin, k, lambda_i, tail_bound })
}

/// `L[K_k](i lambda_i + C0 gamma)` for the collisional kernel around `set`.
pub fn collisional_kernel_transform(set: &BackgroundSet, nu: f64, c0: f64, k: i64, lambda_i: f64) -> Result<Complex64> {
    let shift = c0 * set.gamma;
    let envelope = if shift > 0.0 {
        Envelope::Exponential { rate: shift }
    } else {
        Envelope::Gaussian { scale: 1.0 / (set.gamma * k.unsigned_abs() as f64) }
    };
    laplace_semiinf(
        |t| Complex64::new(volterra_kernel(k, t, set, nu), 0.0),
        Complex64::new(shift, lambda_i),
        envelope,
        1e-12,
    )
}

/// Tail bound `1 - min(int |K| e^{-a t}, (1 + int |K''| e^{-a t}) / L^2)` for one mode.
fn collisional_tail_bound(set: &BackgroundSet, nu: f64, c0: f64, k: i64, half_width: f64) -> Result<f64> {
    let a = c0 * set.gamma;
    let reach = if a > 0.0 { 48.0 / a } else { 10.0 / (set.gamma * k.unsigned_abs() as f64) };
    let kern = |t: f64| volterra_kernel(k, t, set, nu);
    let absolute = integrate_real(|t| kern(t).abs() * (-a * t).exp(), 0.0, reach, 1e-10)?;
    let h = 1e-3;
    let second = |t: f64| {
        let t = t.max(h);
        (kern(t + h) - 2.0 * kern(t) + kern(t - h)) / (h * h)
    };
    let curvature = integrate_real(|t| second(t).abs() * (-a * t).exp(), 0.0, reach, 1e-8)?;
    Ok(1.0 - absolute.min((1.0 + curvature) / (half_width * half_width)))
}

/// Minimum of `|1 - L[K_k](i lambda_i + C0 gamma)|` over modes and the scanned segment.
pub fn penrose_margin_collisional(
    set: &BackgroundSet,
    nu: f64,
    c0: f64,
    modes: ModeSet,
    scan: FrequencyScan,
) -> Result<MarginReport> {
    let freqs = scan.frequencies();
    let per_mode: Vec<(Vec<(i64, f64, f64)>, f64)> = (1..=modes.k_max() as i64)
        .into_par_iter()
        .map(|k| -> Result<_> {
            let cells = freqs
                .iter()
                .map(|&li| Ok((k, li, (1.0 - collisional_kernel_transform(set, nu, c0, k, li)?).norm())))
                .collect::<Result<Vec<_>>>()?;
            Ok((cells, collisional_tail_bound(set, nu, c0, k, scan.half_width)?))
        })
        .collect::<Result<_>>()?;
    let tail_bound = per_mode.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let (k, lambda_i, margin) = fold_minimum(per_mode.into_iter().flat_map(|p| p.0).collect());
    Ok(MarginReport { margin, k, lambda_i, tail_bound })
}

/// Smallest power of two with `2 M sup|t sigma_hat| / C0 <= kappa0 / 5`, plus 20% headroom.
pub fn damping_shift_c0(mass: f64, sup_t_sigma: f64, kappa0: f64) -> Result<f64> {
    if !(kappa0 > 0.0) {
        return Err(Error::Domain(format!("margin must be positive, got {kappa0}")));
    }
    let needed = 1.2 * 10.0 * mass * sup_t_sigma / kappa0;
    Ok(2f64.powi(needed.log2().ceil().max(0.0) as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgrounds::default_bump;

    #[test]
    fn parts_constant() {
        let w2 = |t: f64| ((t * t * t - 3.0 * t) * (-t * t / 2.0).exp()).abs();
        let v = 1.0 + integrate_real(w2, 0.0, 3f64.sqrt(), 1e-14).unwrap() + integrate_real(w2, 3f64.sqrt(), 40.0, 1e-14).unwrap();
        assert!((v - MAXWELL_PARTS_CONSTANT).abs() < 1e-12);
    }

    #[test]
    fn maxwellian_margin_is_positive_and_tends_to_one() {
        let r = penrose_margin_maxwellian(ModeSet::new(8).unwrap(), FrequencyScan::default()).unwrap();
        assert!(r.margin > 0.0 && r.margin < 1.0);
        assert_eq!(r.k, 1);
        let far = penrose_closed_form(50, 0.3, PenroseBackground::Maxwellian).unwrap();
        assert!((far.w.sqrt() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn collisionless_limit_matches_the_frozen_background() {
        let set = BackgroundSet::new(1.0, 0.1, default_bump()).unwrap();
        let li = 0.7;
        let v = collisional_kernel_transform(&set, 0.0, 2.0, 1, li).unwrap();
        let lambda = Complex64::new(0.2, li);
        let direct = laplace_semiinf(
            |t| Complex64::new(-t * set.hat(crate::backgrounds::Profile::F0, t), 0.0),
            lambda,
            Envelope::Gaussian { scale: 10.0 },
            1e-13,
        )
        .unwrap();
        assert!((v - direct).norm() < 1e-11);
    }

    #[test]
    fn shift_sizing_rounds_up_to_a_power_of_two() {
        assert_eq!(damping_shift_c0(1.0, 1.0, 24.0).unwrap(), 1.0);
        assert_eq!(damping_shift_c0(2.0, 1.9520859866513813, 0.5).unwrap(), 128.0);
    }
}
