use crate::error::{Error, Result};

/// Least-squares slope of `ln y` against `t` over `window`, with the coefficient of determination.
pub fn fit_exponential_rate(times: &[f64], values: &[f64], window: (f64, f64)) -> Result<(f64, f64)> {
    if times.len() != values.len() {
        return Err(Error::Length { expected: times.len(), got: values.len() });
    }
    let points: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(t, _)| **t >= window.0 && **t <= window.1)
        .map(|(&t, &y)| (t, y))
        .collect();
    if let Some(&(t, y)) = points.iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::Domain(format!("rate fit needs positive values, got {y} at t={t}")));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(t, y)| (t, y.ln())).collect();
    linear_fit(&logs)
}

/// Ordinary least squares `y = a + b x`; returns `(b, r^2)`.
pub fn linear_fit(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return Err(Error::Domain(format!("fit needs at least two points, got {}", points.len())));
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("fit abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok((slope, r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_exponentials() {
        let t: Vec<f64> = (0..100).map(|i| i as f64 * 0.1).collect();
        let down: Vec<f64> = t.iter().map(|t| (-0.5 * t).exp()).collect();
        let up: Vec<f64> = t.iter().map(|t| 3.0 * (0.2 * t).exp()).collect();
        assert!((fit_exponential_rate(&t, &down, (0.0, 10.0)).unwrap().0 + 0.5).abs() < 1e-3);
        assert!((fit_exponential_rate(&t, &up, (0.0, 10.0)).unwrap().0 - 0.2).abs() < 1e-3);
    }

    #[test]
    fn rejects_non_positive_values() {
        assert!(fit_exponential_rate(&[0.0, 1.0], &[1.0, 0.0], (0.0, 1.0)).is_err());
    }
}
