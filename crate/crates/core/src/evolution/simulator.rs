//! Mode-by-mode integrator for the linearized or nonlinear Vlasov-Poisson-Fokker-Planck system in xi.
//!
//! Each mode solves `d_t g - k d_xi g + nu xi d_xi g + nu xi^2 g = R` with the source
//! `R = -xi (rho_k / k) b_hat - xi sum_l (rho_l / l) g_{k-l}`. Transport and collisions are
//! integrated exactly along characteristics: an integer shift of `k dt / delta_xi` cells,
//! a six-point Lagrange correction for the collisional contraction, and the exact damping
//! factor. The source is added with a third-order Adams-Moulton rule written on propagated
//! history, which stays explicit in `rho` because every source vanishes at `xi = 0`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::characteristics::t_ap;
use super::energy::{energy_dissipation_rows, weighted_mode_norm, EnergyParams};
use crate::backgrounds::{BackgroundSet, Profile};
use crate::error::{Error, Result};
use crate::spectral::{gauss8, ModeSet, SpectralField, XiGrid, DEFAULT_SPILL_TOL};

const STENCIL_LEFT: isize = 2;
const STENCIL_POINTS: usize = 6;
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Homogeneous profile whose transform multiplies the linear field source.
#[derive(Clone, Debug)]
pub enum LinearBackground {
    Maxwellian,
    /// The bump background `f0` frozen at its initial shape.
    Frozen(BackgroundSet),
}

impl LinearBackground {
    fn hat(&self, xi: f64) -> f64 {
        match self {
            Self::Maxwellian => (-xi * xi / 2.0).exp(),
            Self::Frozen(set) => set.hat(Profile::F0, xi),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimParams {
    pub nu: f64,
    pub dt: f64,
    pub t_end: f64,
    /// Include the mode-coupling term (requires `field_coupling`).
    pub nonlinear: bool,
    pub field_coupling: bool,
    pub background: LinearBackground,
    pub energy: EnergyParams,
    /// Evaluate the energy functional at every sample.
    pub record_energy: bool,
    /// Record one sample every this many steps.
    pub sample_every: usize,
    /// Allow `nu t_end > 1`.
    pub long_horizon: bool,
    pub spill_tol: f64,
    pub fixed_point_iterations: usize,
}

impl SimParams {
    /// Free streaming with `dt = delta_xi`.
    pub fn new(grid: &XiGrid, nu: f64, t_end: f64) -> Self {
        Self {
            nu,
            dt: grid.delta_xi(),
            t_end,
            nonlinear: false,
            field_coupling: false,
            background: LinearBackground::Maxwellian,
            energy: EnergyParams::default(),
            record_energy: false,
            sample_every: 1,
            long_horizon: false,
            spill_tol: DEFAULT_SPILL_TOL,
            fixed_point_iterations: 2,
        }
    }

    pub fn linear(mut self, background: LinearBackground) -> Self {
        self.field_coupling = true;
        self.background = background;
        self
    }

    pub fn nonlinear(mut self) -> Self {
        self.field_coupling = true;
        self.nonlinear = true;
        self
    }

    /// Number of grid cells travelled by mode one per step.
    pub fn cells_per_step(&self, grid: &XiGrid) -> Result<usize> {
        let ratio = self.dt / grid.delta_xi();
        let cells = ratio.round();
        if !(cells >= 1.0 && (ratio - cells).abs() <= 1e-9 * cells) {
            return Err(Error::Guard(format!("dt / delta_xi = {ratio} is not a positive integer")));
        }
        Ok(cells as usize)
    }

    pub fn validate(&self, grid: &XiGrid) -> Result<()> {
        self.cells_per_step(grid)?;
        if !(self.nu >= 0.0 && self.nu.is_finite()) {
            return Err(Error::Config(format!("nu must be nonnegative, got {}", self.nu)));
        }
        if !(self.t_end >= 0.0) {
            return Err(Error::Config(format!("t_end must be nonnegative, got {}", self.t_end)));
        }
        let cfl = self.nu * self.dt * grid.xi_max();
        if cfl >= 0.5 {
            return Err(Error::Guard(format!("nu dt xi_max = {cfl} must stay below 1/2")));
        }
        if self.nu * self.t_end > 1.0 && !self.long_horizon {
            return Err(Error::Guard(format!("nu t_end = {} exceeds 1", self.nu * self.t_end)));
        }
        if self.nonlinear && !self.field_coupling {
            return Err(Error::Config("the nonlinear term needs field coupling".into()));
        }
        if self.sample_every == 0 {
            return Err(Error::Config("sample_every must be positive".into()));
        }
        if self.record_energy {
            self.energy.validate()?;
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt - 1e-9).ceil().max(0.0) as usize
    }
}

/// Exact one-step solution operator of the homogeneous mode equation.
#[derive(Clone, Debug)]
struct Propagator {
    first: Vec<isize>,
    weights: Vec<[f64; STENCIL_POINTS]>,
    damping: Vec<f64>,
}

fn lagrange_weights(s: f64) -> [f64; STENCIL_POINTS] {
    let mut w = [1.0; STENCIL_POINTS];
    for (i, wi) in w.iter_mut().enumerate() {
        let o = i as f64 - STENCIL_LEFT as f64;
        for q in 0..STENCIL_POINTS {
            if q != i {
                let oq = q as f64 - STENCIL_LEFT as f64;
                *wi *= (s - oq) / (o - oq);
            }
        }
    }
    w
}

impl Propagator {
    fn new(grid: &XiGrid, k: i64, nu: f64, dt: f64, cells: usize) -> Self {
        let n = grid.len();
        let h = grid.delta_xi();
        let kf = k as f64;
        let contraction = (-nu * dt).exp_m1();
        let drift = kf * (t_ap(dt, nu) - dt);
        let mut first = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut damping = Vec::with_capacity(n);
        for j in 0..n {
            let xi = grid.node(j);
            let offset = (xi * contraction + drift) / h;
            let base = offset.floor();
            first.push(j as isize + (k.unsigned_abs() as usize * cells) as isize + base as isize - STENCIL_LEFT);
            weights.push(lagrange_weights(offset - base));
            let damp = if nu == 0.0 {
                1.0
            } else {
                let foot = xi * (-nu * dt).exp() + kf * t_ap(dt, nu);
                let path = |s: f64| {
                    let x = foot * (nu * s).exp() - kf * (nu * s).exp_m1() / nu;
                    Complex64::new(x * x, 0.0)
                };
                (-nu * gauss8(path, 0.0, dt).re).exp()
            };
            damping.push(damp);
        }
        Self { first, weights, damping }
    }

    fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        let n = input.len() as isize;
        (0..input.len())
            .map(|j| {
                let start = self.first[j];
                let w = &self.weights[j];
                let mut acc = ZERO;
                for (i, wi) in w.iter().enumerate() {
                    let src = start + i as isize;
                    if *wi != 0.0 && src >= 0 && src < n {
                        acc += *wi * input[src as usize];
                    }
                }
                acc * self.damping[j]
            })
            .collect()
    }
}

/// Observables recorded at one time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    /// `rho_k` for `k = 0..=k_max`.
    pub rho: Vec<Complex64>,
    /// `|E_k|` for `k = 0..=k_max`.
    pub field: Vec<f64>,
    /// `||<v>^m f_k||` for `k = 0..=k_max`.
    pub weighted_norms: Vec<f64>,
    /// Energy and dissipation of the nonzero modes.
    pub energy: Option<(f64, f64)>,
}

impl Sample {
    /// `||<v>^m f_neq||` over both signs of every nonzero mode.
    pub fn nonzero_norm(&self) -> f64 {
        (2.0 * self.weighted_norms.iter().skip(1).map(|x| x * x).sum::<f64>()).sqrt()
    }
}

/// Stepper state for one run.
#[derive(Clone, Debug)]
pub struct Simulator {
    params: SimParams,
    grid: XiGrid,
    k_max: usize,
    propagators: Vec<Propagator>,
    /// `xi b_hat(xi)`.
    source_profile: Vec<f64>,
    /// Rows `g_k` for `k = 0..=k_max`.
    rows: Vec<Vec<Complex64>>,
    source: Option<Vec<Vec<Complex64>>>,
    /// Source of the previous step propagated once.
    propagated_source: Option<Vec<Vec<Complex64>>>,
    step_index: usize,
    time: f64,
}

impl Simulator {
    pub fn new(initial: &SpectralField, params: SimParams) -> Result<Self> {
        let grid = initial.grid();
        params.validate(&grid)?;
        let cells = params.cells_per_step(&grid)?;
        let k_max = initial.modes().k_max();
        let propagators: Vec<Propagator> =
            (0..=k_max as i64).into_par_iter().map(|k| Propagator::new(&grid, k, params.nu, params.dt, cells)).collect();
        let source_profile = grid.nodes().iter().map(|&x| x * params.background.hat(x)).collect();
        let rows: Vec<Vec<Complex64>> = (0..=k_max as i64).map(|k| initial.row(k).to_vec()).collect();
        for (k, row) in rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::NonFinite { k: k as i64, xi: grid.node(j) });
            }
        }
        let mut sim = Self {
            params,
            grid,
            k_max,
            propagators,
            source_profile,
            rows,
            source: None,
            propagated_source: None,
            step_index: 0,
            time: initial.time,
        };
        sim.symmetrize_zero_mode();
        if sim.params.field_coupling {
            sim.source = Some(sim.source_of(&sim.rows));
        }
        Ok(sim)
    }

    pub fn params(&self) -> &SimParams {
        &self.params
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn grid(&self) -> XiGrid {
        self.grid
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.rows[k]
    }

    pub fn density(&self, k: i64) -> Complex64 {
        let rho = self.rows[k.unsigned_abs() as usize][self.grid.zero_index()];
        if k < 0 {
            rho.conj()
        } else {
            rho
        }
    }

    /// Current state on the full symmetric mode set.
    pub fn state(&self) -> SpectralField {
        let modes = ModeSet::new(self.k_max).expect("k_max was validated");
        let mut field = SpectralField::zeros(modes, self.grid);
        for k in 0..=self.k_max {
            field.row_mut(k as i64).copy_from_slice(&self.rows[k]);
        }
        field.mirror_negative_modes();
        field.time = self.time;
        field
    }

    fn symmetrize_zero_mode(&mut self) {
        let n = self.grid.len();
        let row = &mut self.rows[0];
        for j in 1..n / 2 {
            let avg = 0.5 * (row[j] + row[n - j].conj());
            row[j] = avg;
            row[n - j] = avg.conj();
        }
        let z = n / 2;
        row[z] = Complex64::new(row[z].re, 0.0);
    }

    /// `g_m(xi_j)` for any `|m| <= k_max`, negative modes by conjugate mirror.
    fn mode_value(rows: &[Vec<Complex64>], m: i64, j: usize) -> Complex64 {
        if m >= 0 {
            rows[m as usize][j]
        } else if j == 0 {
            ZERO
        } else {
            rows[(-m) as usize][rows[0].len() - j].conj()
        }
    }

    fn source_of(&self, rows: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let z = self.grid.zero_index();
        let rho: Vec<Complex64> = rows.iter().map(|r| r[z]).collect();
        self.source_with(rows, &rho)
    }

    /// Field source for the given rows and densities.
    fn source_with(&self, rows: &[Vec<Complex64>], rho: &[Complex64]) -> Vec<Vec<Complex64>> {
        let n = self.grid.len();
        let kmax = self.k_max as i64;
        let rho_at = |l: i64| if l >= 0 { rho[l as usize] } else { rho[(-l) as usize].conj() };
        let nodes = self.grid.nodes();
        (0..=kmax)
            .into_par_iter()
            .map(|k| {
                let mut out = vec![ZERO; n];
                if k != 0 {
                    let c = -rho[k as usize] / k as f64;
                    for j in 0..n {
                        out[j] = c * self.source_profile[j];
                    }
                }
                if self.params.nonlinear {
                    for l in -kmax..=kmax {
                        let m = k - l;
                        if l == 0 || m.abs() > kmax {
                            continue;
                        }
                        let c = -rho_at(l) / l as f64;
                        for j in 0..n {
                            out[j] += c * nodes[j] * Self::mode_value(rows, m, j);
                        }
                    }
                }
                out
            })
            .collect()
    }

    fn propagate(&self, rows: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        rows.par_iter().zip(&self.propagators).map(|(r, p)| p.apply(r)).collect()
    }

    /// Advance one step.
    pub fn step(&mut self) -> Result<()> {
        let dt = self.params.dt;
        let z = self.grid.zero_index();
        let mut next = self.propagate(&self.rows);
        if let Some(source) = self.source.take() {
            let hr = self.propagate(&source);
            let older = self.propagated_source.as_ref().map(|p| self.propagate(p));
            let (lead, weight_now, weight_old) = if older.is_some() { (5.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0) } else { (0.5, 0.5, 0.0) };
            for k in 0..=self.k_max {
                for j in 0..next[k].len() {
                    let mut add = weight_now * hr[k][j];
                    if let Some(o) = &older {
                        add += weight_old * o[k][j];
                    }
                    next[k][j] += dt * add;
                }
            }
            let rho: Vec<Complex64> = next.iter().map(|r| r[z]).collect();
            let explicit = next;
            let mut guess = explicit.clone();
            let passes = if self.params.nonlinear { self.params.fixed_point_iterations.max(1) } else { 1 };
            for _ in 0..passes {
                let r = self.source_with(&guess, &rho);
                guess = explicit
                    .iter()
                    .zip(&r)
                    .map(|(e, s)| e.iter().zip(s).map(|(a, b)| a + dt * lead * b).collect())
                    .collect();
            }
            next = guess;
            self.propagated_source = Some(hr);
            self.rows = next;
            self.symmetrize_zero_mode();
            self.source = Some(self.source_of(&self.rows));
        } else {
            self.rows = next;
            self.symmetrize_zero_mode();
        }
        self.step_index += 1;
        self.time += dt;
        Ok(())
    }

    /// Largest damped inflow-edge value relative to the state maximum.
    pub fn inflow_spill(&self) -> (i64, f64) {
        let scale = self.rows.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return (0, 0.0);
        }
        let n = self.grid.len();
        let xm = self.grid.xi_max();
        let mut worst = (0, 0.0);
        for k in 1..=self.k_max {
            let decay = (-self.params.nu * xm * xm * xm / (3.0 * k as f64)).exp();
            let level = self.rows[k][n - 1].norm() * decay / scale;
            if level > worst.1 {
                worst = (k as i64, level);
            }
        }
        worst
    }

    fn check(&self) -> Result<()> {
        for (k, row) in self.rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::NonFinite { k: k as i64, xi: self.grid.node(j) });
            }
        }
        let (k, level) = self.inflow_spill();
        if level > self.params.spill_tol {
            return Err(Error::Spill { k, level, tol: self.params.spill_tol });
        }
        Ok(())
    }

    pub fn observe(&self) -> Result<Sample> {
        let z = self.grid.zero_index();
        let rho: Vec<Complex64> = self.rows.iter().map(|r| r[z]).collect();
        let field = rho.iter().enumerate().map(|(k, r)| if k == 0 { 0.0 } else { r.norm() / k as f64 }).collect();
        let m = self.params.energy.m;
        let weighted_norms = self.rows.par_iter().map(|r| weighted_mode_norm(&self.grid, r, m)).collect();
        let energy = if self.params.record_energy {
            // Negative modes mirror the positive ones and contribute equally.
            let (e, d) = energy_dissipation_rows(
                self.grid,
                (1..=self.k_max).map(|k| (k as i64, self.rows[k].as_slice())),
                &self.params.energy,
                self.params.nu,
                self.time,
            )?;
            Some((2.0 * e, 2.0 * d))
        } else {
            None
        };
        Ok(Sample { t: self.time, rho, field, weighted_norms, energy })
    }

    /// Step to `t_end`, sampling every `sample_every` steps and at the end.
    pub fn run(&mut self) -> Result<Vec<Sample>> {
        let steps = self.params.steps();
        let every = self.params.sample_every;
        let mut samples = vec![self.observe()?];
        for i in 1..=steps {
            self.step()?;
            if i % every == 0 || i == steps {
                self.check()?;
                samples.push(self.observe()?);
            }
        }
        Ok(samples)
    }
}

/// One step of the integrator from `state` (second-order start).
pub fn vpfp_step(state: &SpectralField, params: &SimParams) -> Result<SpectralField> {
    let mut sim = Simulator::new(state, params.clone())?;
    sim.step()?;
    sim.check()?;
    Ok(sim.state())
}

/// `E_k = -i rho_k / k` for every mode of the state, with `E_0 = 0`.
pub fn electric_field(state: &SpectralField) -> Vec<(i64, Complex64)> {
    state
        .modes()
        .modes()
        .map(|k| {
            if k == 0 {
                (0, ZERO)
            } else {
                (k, Complex64::new(0.0, -1.0) * state.density(k) / k as f64)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgrounds::{default_bump, fe_hat_exact};
    use crate::spectral::build_field;

    fn packet(grid: XiGrid, k_max: usize) -> SpectralField {
        build_field(ModeSet::new(k_max).unwrap(), grid, |k, x| {
            Complex64::new(1.0, -0.5 * x) * (-x * x / 2.0).exp() * (0.5f64).powi(k.abs() as i32)
        })
        .unwrap()
    }

    #[test]
    fn weights_reproduce_polynomials() {
        for s in [0.0, 0.25, 0.5, 0.9] {
            let w = lagrange_weights(s);
            for p in 0..6 {
                let v: f64 = (0..6).map(|i| w[i] * (i as f64 - 2.0).powi(p)).sum();
                assert!((v - s.powi(p)).abs() < 1e-12);
            }
        }
        assert_eq!(lagrange_weights(0.0), [0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn free_streaming_is_an_exact_shift() {
        let grid = XiGrid::new(12.0, 256).unwrap();
        let init = packet(grid, 2);
        let mut p = SimParams::new(&grid, 0.0, 10.0 * grid.delta_xi());
        p.dt = 2.0 * grid.delta_xi();
        let mut sim = Simulator::new(&init, p).unwrap();
        for _ in 0..5 {
            sim.step().unwrap();
        }
        for k in 0..=2usize {
            let shift = 10 * k;
            for j in 0..256 {
                let expected = if j + shift < 256 { init.row(k as i64)[j + shift] } else { ZERO };
                assert_eq!(sim.row(k)[j], expected);
            }
        }
    }

    #[test]
    fn zero_mode_follows_the_exact_collisional_solution() {
        let grid = XiGrid::default_resolution();
        let set = BackgroundSet::new(1.0, 0.1, default_bump()).unwrap();
        let nu = 0.1;
        let init = build_field(ModeSet::new(1).unwrap(), grid, |k, x| {
            Complex64::new(if k == 0 { fe_hat_exact(&set, nu, 0.0, x) } else { 0.0 }, 0.0)
        })
        .unwrap();
        let mass = init.density(0);
        let mut sim = Simulator::new(&init, SimParams::new(&grid, nu, 5.0)).unwrap();
        let mut worst = 0.0f64;
        while sim.time() < 5.0 - 1e-9 {
            sim.step().unwrap();
            for j in 0..grid.len() {
                let exact = fe_hat_exact(&set, nu, sim.time(), grid.node(j));
                worst = worst.max((sim.row(0)[j] - exact).norm());
            }
            assert!((sim.density(0) - mass).norm() < 1e-14);
        }
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn reality_and_field_identities() {
        let grid = XiGrid::new(24.0, 512).unwrap();
        let init = packet(grid, 3);
        let p = SimParams::new(&grid, 1e-3, 2.0).nonlinear();
        let out = vpfp_step(&init, &p).unwrap();
        assert!(out.reality_defect() < 1e-15);
        let e = electric_field(&out);
        for (k, ek) in &e {
            if *k != 0 {
                let partner = e.iter().find(|(m, _)| *m == -*k).unwrap().1;
                assert!((ek - partner.conj()).norm() < 1e-15);
            }
        }
        let mut unit = SpectralField::zeros(ModeSet::new(1).unwrap(), grid);
        unit.row_mut(1)[grid.zero_index()] = Complex64::new(1.0, 0.0);
        assert_eq!(electric_field(&unit)[2], (1, Complex64::new(0.0, -1.0)));
    }

    #[test]
    fn guards() {
        let grid = XiGrid::default_resolution();
        let init = packet(grid, 1);
        let mut p = SimParams::new(&grid, 0.0, 1.0);
        p.dt = 1.5 * grid.delta_xi();
        assert!(matches!(Simulator::new(&init, p), Err(Error::Guard(_))));
        assert!(matches!(Simulator::new(&init, SimParams::new(&grid, 0.5, 1.0)), Err(Error::Guard(_))));
        assert!(matches!(Simulator::new(&init, SimParams::new(&grid, 0.01, 200.0)), Err(Error::Guard(_))));
        let mut long = SimParams::new(&grid, 0.01, 200.0);
        long.long_horizon = true;
        assert!(Simulator::new(&init, long).is_ok());
    }
}
