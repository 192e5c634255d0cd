//! Free and collisional characteristics, their damping factors and the Volterra kernel.

use crate::backgrounds::{BackgroundSet, Profile};

const TAYLOR_LIMIT: f64 = 1e-6;
const SERIES_LIMIT: f64 = 0.5;

/// Free characteristic `eta - k t`.
pub fn eta_bar(t: f64, k: i64, eta: f64) -> f64 {
    eta - k as f64 * t
}

/// `exp(-nu * integral_tau^t |eta - k s|^2 ds)` along a free characteristic.
pub fn s_free(t: f64, tau: f64, k: i64, eta: f64, nu: f64) -> f64 {
    let a = eta_bar(tau, k, eta);
    let d = t - tau;
    let kf = k as f64;
    let integral = a * a * d - a * kf * d * d + kf * kf * d * d * d / 3.0;
    (-nu * integral).exp()
}

/// `(1 - exp(-nu t)) / nu`, with a Taylor branch at small `nu t`.
pub fn t_ap(t: f64, nu: f64) -> f64 {
    let x = nu * t;
    if x.abs() < TAYLOR_LIMIT {
        t * (1.0 - x / 2.0 + x * x / 6.0)
    } else {
        -(-x).exp_m1() / nu
    }
}

/// `x - 3/2 + 2 exp(-x) - exp(-2x) / 2`, which is `x^3 / 3 + O(x^4)`.
fn collisional_exponent(x: f64) -> f64 {
    if x.abs() < SERIES_LIMIT {
        let mut term = x * x / 2.0;
        let mut sum = 0.0;
        let mut pow2 = 2.0;
        for n in 3..40 {
            term *= x / n as f64;
            pow2 *= 2.0;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * (2.0 - pow2) * term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        x - 1.5 + 2.0 * (-x).exp() - 0.5 * (-2.0 * x).exp()
    }
}

/// Damping along the collisional characteristic through `xi = 0` after `elapsed` time.
pub fn s_coll(elapsed: f64, k: i64, nu: f64) -> f64 {
    let k2 = (k * k) as f64;
    if nu == 0.0 {
        return 1.0;
    }
    (-(k2 / (nu * nu)) * collisional_exponent(nu * elapsed)).exp()
}

/// `-S_k(t) t_ap f0_hat(k t_ap)`.
pub fn volterra_kernel(k: i64, t: f64, set: &BackgroundSet, nu: f64) -> f64 {
    let tap = t_ap(t, nu);
    -s_coll(t, k, nu) * tap * set.hat(Profile::F0, k as f64 * tap)
}

/// Kernel built on a caller-supplied even transform (used for the pure Maxwellian).
pub fn volterra_kernel_with<F: Fn(f64) -> f64>(k: i64, t: f64, nu: f64, background_hat: F) -> f64 {
    let tap = t_ap(t, nu);
    -s_coll(t, k, nu) * tap * background_hat(k as f64 * tap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgrounds::default_bump;

    #[test]
    fn free_characteristic_identities() {
        assert_eq!(eta_bar(0.0, 3, 1.7), 1.7);
        assert_eq!(eta_bar(2.0, 3, 6.0), 0.0);
        assert_eq!(eta_bar(0.5, 3, 6.0), 3.0 * 1.5);
        assert_eq!(s_free(2.0, 2.0, 1, 0.3, 0.1), 1.0);
        let (k, t, nu) = (2i64, 3.0, 0.01);
        let diag = s_free(t, 0.0, k, k as f64 * t, nu);
        assert!((diag - (-nu * 4.0 * 27.0 / 3.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn approximate_time_limits() {
        assert_eq!(t_ap(3.0, 0.0), 3.0);
        assert!((t_ap(3.0, 1e-9) - 3.0).abs() < 1e-8);
        let (t, nu) = (5.0, 0.1);
        assert!((t_ap(t, nu) - (1.0 - (-0.5f64).exp()) / 0.1).abs() < 1e-14_f64);
    }

    #[test]
    fn exponent_series_matches_high_precision_values() {
        // 40-digit reference values of x - 3/2 + 2e^{-x} - e^{-2x}/2
        let reference = [
            (0.3, 0.007_230_623_316_422_516),
            (0.45, 0.021_971_473_373_247_03),
            (0.499, 0.028_967_019_325_869_857),
        ];
        for (x, exact) in reference {
            assert!((collisional_exponent(x) - exact).abs() < 1e-14 * exact, "{x}");
        }
        let x = SERIES_LIMIT;
        let closed: f64 = x - 1.5 + 2.0 * (-x).exp() - 0.5 * (-2.0 * x).exp();
        assert!((collisional_exponent(x - 1e-15) - closed).abs() < 1e-14);
        assert!((collisional_exponent(1e-3) - (1e-9 / 3.0 - 1e-12 / 4.0 + 7e-15 / 60.0)).abs() < 1e-19);
    }

    #[test]
    fn kernel_special_values() {
        let set = BackgroundSet::new(1.0, 0.1, default_bump()).unwrap();
        assert_eq!(volterra_kernel(1, 0.0, &set, 1e-4), 0.0);
        for t in [0.3, 1.0, 2.5] {
            assert!((volterra_kernel(2, t, &set, 0.0) + t * set.hat(Profile::F0, 2.0 * t)).abs() < 1e-15);
            let maxwell = volterra_kernel_with(1, t, 0.0, |x| (-x * x / 2.0).exp());
            assert!((maxwell + t * (-t * t / 2.0f64).exp()).abs() < 1e-15);
        }
    }
}
