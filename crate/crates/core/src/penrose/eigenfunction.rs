use num_complex::Complex64;

use super::continuation::EigenSolution;
use crate::backgrounds::{BackgroundSet, Profile};
use crate::error::{Error, Result};
use crate::spectral::{gauss8, laplace_semiinf, Envelope, XiGrid};

/// Eigenfunction samples on a xi grid, normalized to one at the origin.
#[derive(Clone, Debug)]
pub struct Eigenfunction {
    pub grid: XiGrid,
    pub values: Vec<Complex64>,
    /// `|e_plus(0) - 1|`, the jump between the two branches before normalization.
    pub branch_mismatch: f64,
    pub lambda: Complex64,
}

/// Solve `e' = lambda e + xi f0_hat` with the decaying branch for `xi >= 0` and `e(0) = 1` for `xi <= 0`.
pub fn eigenfunction_hat(sol: &EigenSolution, set: &BackgroundSet, grid: XiGrid) -> Result<Eigenfunction> {
    let lambda = sol.lambda;
    if lambda.re <= 0.0 {
        return Err(Error::Domain(format!("eigenvalue {lambda} is not growing")));
    }
    if (set.mass - sol.mass).abs() > 1e-12 || (set.gamma - sol.gamma).abs() > 1e-15 {
        return Err(Error::Domain("background does not match the eigen solution".into()));
    }
    let f0 = |x: f64| set.hat(Profile::F0, x);
    let n = grid.len();
    let h = grid.delta_xi();
    let z = grid.zero_index();
    let decay = (-lambda * h).exp();
    let mut values = vec![Complex64::new(0.0, 0.0); n];

    let edge = grid.node(n - 1);
    let mut inward = laplace_semiinf(
        |t| Complex64::new((edge + t) * f0(edge + t), 0.0),
        lambda,
        Envelope::Gaussian { scale: 1.0 / set.gamma.min(1.0) },
        1e-14,
    )?;
    values[n - 1] = -inward;
    for j in (z..n - 1).rev() {
        let xj = grid.node(j);
        inward = decay * inward + gauss8(|s| (-lambda * (s - xj)).exp() * s * f0(s), xj, xj + h);
        values[j] = -inward;
    }
    let branch_mismatch = (values[z] - 1.0).norm();

    let mut outward = Complex64::new(1.0, 0.0);
    values[z] = outward;
    for j in (1..=z).rev() {
        let xj = grid.node(j);
        let target = xj - h;
        outward = decay * outward + gauss8(|s| (lambda * (target - s)).exp() * s * f0(s), xj, target);
        values[j - 1] = outward;
    }
    Ok(Eigenfunction { grid, values, branch_mismatch, lambda })
}

impl Eigenfunction {
    /// Largest residual of the eigen-ODE with sixth-order central differences.
    pub fn ode_residual(&self, set: &BackgroundSet) -> f64 {
        const C: [f64; 3] = [45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0];
        let h = self.grid.delta_xi();
        let e = &self.values;
        let mut worst = 0.0f64;
        for j in 3..e.len() - 3 {
            let d = (C[0] * (e[j + 1] - e[j - 1]) + C[1] * (e[j + 2] - e[j - 2]) + C[2] * (e[j + 3] - e[j - 3])) / h;
            let xi = self.grid.node(j);
            let r = d - self.lambda * e[j] - xi * set.hat(Profile::F0, xi);
            worst = worst.max(r.norm());
        }
        worst
    }

    /// L2 norm over `[-reach, 0]`.
    pub fn left_norm(&self, reach: f64) -> f64 {
        let h = self.grid.delta_xi();
        let sum: f64 = (0..self.values.len())
            .filter(|&j| {
                let x = self.grid.node(j);
                x <= 0.0 && x >= -reach
            })
            .map(|j| self.values[j].norm_sqr())
            .sum();
        (sum * h).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgrounds::default_bump;
    use crate::penrose::{continue_eigenvalue, ContinuationOptions, Rectangle};

    fn solve(gamma: f64) -> (EigenSolution, BackgroundSet) {
        let b = default_bump();
        let rect = Rectangle::new(gamma, ContinuationOptions::default().delta, &b).unwrap();
        let eps = rect.continuation_length(&b).unwrap();
        let sol = continue_eigenvalue(gamma, rect.m0 + eps, &b, ContinuationOptions::default()).unwrap();
        let set = BackgroundSet::new(sol.mass, gamma, b).unwrap();
        (sol, set)
    }

    #[test]
    fn branches_join_at_the_root() {
        let (sol, set) = solve(0.05);
        let e = eigenfunction_hat(&sol, &set, XiGrid::covering(200.0, 3.0 / 64.0).unwrap()).unwrap();
        assert_eq!(e.values[e.grid.zero_index()], Complex64::new(1.0, 0.0));
        assert!(e.branch_mismatch <= 10.0 * sol.psi_residual.max(1e-13), "{}", e.branch_mismatch);
        assert!(e.ode_residual(&set) < 1e-6);
    }
}
