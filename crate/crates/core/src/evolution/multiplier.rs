//! Enhanced-dissipation multiplier `M_1(k, xi) = 1 + phi(nu^(1/3) |k|^(-4/3) k xi)`.

/// Smooth step with `phi = 0` below -3, slope 1/4 on [-1, 1], `phi = 1` above 3.
pub fn phi(z: f64) -> f64 {
    if z < 0.0 {
        return 1.0 - phi(-z);
    }
    if z <= 1.0 {
        0.5 + z / 4.0
    } else if z < 3.0 {
        let x = (z - 1.0) / 2.0;
        0.75 + x / 2.0 - x * x * x / 2.0 + x * x * x * x / 4.0
    } else {
        1.0
    }
}

pub fn phi_prime(z: f64) -> f64 {
    let z = z.abs();
    if z <= 1.0 {
        0.25
    } else if z < 3.0 {
        let x = (z - 1.0) / 2.0;
        (0.5 - 1.5 * x * x + x * x * x) / 2.0
    } else {
        0.0
    }
}

fn scaled_argument(k: i64, xi: f64, nu: f64) -> f64 {
    let kf = k as f64;
    nu.cbrt() * kf.abs().powf(-4.0 / 3.0) * kf * xi
}

pub fn multiplier_eval(k: i64, xi: f64, nu: f64) -> f64 {
    if k == 0 {
        1.0
    } else {
        1.0 + phi(scaled_argument(k, xi, nu))
    }
}

/// `k d/dxi M_1 = nu^(1/3) |k|^(2/3) phi'(...)`.
pub fn multiplier_transport_derivative(k: i64, xi: f64, nu: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        nu.cbrt() * (k as f64).abs().powf(2.0 / 3.0) * phi_prime(scaled_argument(k, xi, nu))
    }
}
