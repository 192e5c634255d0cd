use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Eight-point Gauss-Legendre rule on [-1, 1].
pub const GAUSS8_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
pub const GAUSS8_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Gauss-Legendre integral over `[a, b]` with eight nodes.
pub fn gauss8<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64) -> Complex64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..8 {
        sum += f(mid + half * GAUSS8_NODES[i]) * GAUSS8_WEIGHTS[i];
    }
    sum * half
}

fn kronrod_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let centre = f(mid);
    let mut kronrod = centre * KRONROD_WEIGHTS[7];
    let mut gauss = centre * GAUSS_WEIGHTS[3];
    for i in 0..7 {
        let dx = half * KRONROD_NODES[i];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += pair * KRONROD_WEIGHTS[i];
        if i % 2 == 1 {
            gauss += pair * GAUSS_WEIGHTS[i / 2];
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

/// Fixed uniform panels; returns the value and the Gauss-Kronrod error estimate.
pub fn fixed_panels<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize) -> (Complex64, f64) {
    let h = (b - a) / panels as f64;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for p in 0..panels {
        let (v, e) = kronrod_panel(&f, a + p as f64 * h, a + (p + 1) as f64 * h);
        value += v;
        err += e;
    }
    (value, err)
}

/// Globally adaptive Gauss-Kronrod quadrature over a finite interval.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<(Complex64, f64)> {
    integrate_from(f, a, b, tol, 1)
}

fn integrate_from<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> Result<(Complex64, f64)> {
    const MAX_PANELS: usize = 20_000;
    if a == b {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let h = (b - a) / panels as f64;
    let mut list: Vec<(f64, f64, Complex64, f64)> = (0..panels)
        .map(|p| {
            let lo = a + p as f64 * h;
            let hi = a + (p + 1) as f64 * h;
            let (v, e) = kronrod_panel(&f, lo, hi);
            (lo, hi, v, e)
        })
        .collect();
    loop {
        let err: f64 = list.iter().map(|p| p.3).sum();
        if err <= tol || list.len() >= MAX_PANELS {
            let value = list.iter().map(|p| p.2).sum();
            if !(err.is_finite()) {
                return Err(Error::Domain("quadrature produced non-finite values".into()));
            }
            return Ok((value, err));
        }
        let worst = list
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = list.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod_panel(&f, lo, mid);
        let (v2, e2) = kronrod_panel(&f, mid, hi);
        list.push((lo, mid, v1, e1));
        list.push((mid, hi, v2, e2));
    }
}

pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate(|t| Complex64::new(f(t), 0.0), a, b, tol).map(|(v, _)| v.re)
}

/// Decay class of an integrand on the half line, declared by the caller.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Envelope {
    /// Polynomial times `exp(-t^2 / (2 scale^2))`.
    Gaussian { scale: f64 },
    /// Polynomial times `exp(-rate t)`.
    Exponential { rate: f64 },
    /// Vanishes beyond `end`.
    Compact { end: f64 },
}

impl Envelope {
    fn cutoff(&self) -> f64 {
        match *self {
            Envelope::Gaussian { scale } => 10.0 * scale,
            Envelope::Exponential { rate } => 48.0 / rate,
            Envelope::Compact { end } => end,
        }
    }
}

/// `integral_0^inf exp(-lambda t) w(t) dt` with value and error estimate.
pub fn laplace_semiinf_with_error<F: Fn(f64) -> Complex64>(
    w: F,
    lambda: Complex64,
    envelope: Envelope,
    tol: f64,
) -> Result<(Complex64, f64)> {
    if lambda.re < 0.0 {
        return Err(Error::Domain(format!("Laplace variable needs Re >= 0, got {lambda}")));
    }
    let mut cutoff = envelope.cutoff();
    if lambda.re > 0.0 {
        cutoff = cutoff.min(48.0 / lambda.re);
    }
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(Error::Domain(format!("invalid quadrature envelope {envelope:?}")));
    }
    let integrand = |t: f64| (-lambda * t).exp() * w(t);
    if !matches!(envelope, Envelope::Compact { .. }) {
        let tail = integrand(cutoff).norm() * cutoff.max(1.0);
        if !(tail <= tol) {
            return Err(Error::Divergence { t: cutoff, level: tail });
        }
    }
    let panels = 4 + (cutoff * lambda.im.abs() / std::f64::consts::PI).ceil().min(4000.0) as usize;
    integrate_from(integrand, 0.0, cutoff, tol, panels)
}

pub fn laplace_semiinf<F: Fn(f64) -> Complex64>(w: F, lambda: Complex64, envelope: Envelope, tol: f64) -> Result<Complex64> {
    laplace_semiinf_with_error(w, lambda, envelope, tol).map(|(v, _)| v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn exponential_at_zero_is_one() {
        let v = laplace_semiinf(|t| real((-t).exp()), real(0.0), Envelope::Exponential { rate: 1.0 }, 1e-13).unwrap();
        assert!((v - 1.0).norm() < 1e-12);
    }

    #[test]
    fn gaussian_first_moment_is_one() {
        let v = laplace_semiinf(|t| real(t * (-t * t / 2.0).exp()), real(0.0), Envelope::Gaussian { scale: 1.0 }, 1e-13)
            .unwrap();
        assert!((v - 1.0).norm() < 1e-12);
    }

    #[test]
    fn gaussian_moment_with_decay_matches_refined_reference() {
        let w = |t: f64| real(t * (-t * t / 2.0).exp());
        let v = laplace_semiinf(w, real(1.0), Envelope::Gaussian { scale: 1.0 }, 1e-13).unwrap();
        let coarse = fixed_panels(|t| (-t).exp() * w(t), 0.0, 12.0, 64).0;
        let fine = fixed_panels(|t| (-t).exp() * w(t), 0.0, 12.0, 128).0;
        assert!((fine - coarse).norm() < 1e-13);
        assert!((v - fine).norm() < 1e-12);
        // closed form 1 - sqrt(pi/2) e^{1/2} erfc(1/sqrt2), erfc(0.70710678) = 0.31731050786291415
        let exact = 1.0 - (std::f64::consts::PI / 2.0).sqrt() * 0.5f64.exp() * 0.317_310_507_862_914_15;
        assert!((v.re - exact).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_transform_matches_closed_form() {
        // integral_0^inf e^{-i u t} t e^{-t^2/2} dt = 1 - sqrt2 u D(u/sqrt2) - i sqrt(pi/2) u e^{-u^2/2}
        let u = 7.3;
        let v = laplace_semiinf(
            |t| real(t * (-t * t / 2.0).exp()),
            Complex64::new(0.0, u),
            Envelope::Gaussian { scale: 1.0 },
            1e-13,
        )
        .unwrap();
        let re = 1.0 - 2f64.sqrt() * u * crate::spectral::dawson(u / 2f64.sqrt());
        let im = -(std::f64::consts::PI / 2.0).sqrt() * u * (-u * u / 2.0).exp();
        assert!((v - Complex64::new(re, im)).norm() < 1e-12);
    }

    #[test]
    fn violated_envelope_is_reported() {
        let r = laplace_semiinf(|_| real(1.0), real(0.0), Envelope::Gaussian { scale: 1.0 }, 1e-12);
        assert!(matches!(r, Err(Error::Divergence { .. })));
    }

    #[test]
    fn error_estimate_shrinks_under_refinement() {
        let f = |t: f64| Complex64::new(0.0, 2.0 * t).exp() * t * (-t * t / 2.0).exp();
        let mut last = f64::INFINITY;
        for panels in [4usize, 8, 16, 32] {
            let (_, err) = fixed_panels(f, 0.0, 10.0, panels);
            assert!(err <= 0.5 * last, "{panels}: {err} vs {last}");
            last = err;
        }
    }
}
