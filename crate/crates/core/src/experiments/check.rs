//! Invariant suite behind `vpfp check`.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;

use super::common::{mean_free, packet};
use super::report::Verdict;
use crate::error::Result;
use crate::evolution::{
    energy_dissipation_rows, multiplier_eval, multiplier_transport_derivative, phi, phi_prime, solve_volterra,
    EnergyParams, SimParams, Simulator, VolterraProblem,
};
use crate::penrose::{penrose_margin_maxwellian, FrequencyScan, PenroseTable};
use crate::spectral::{build_field, FourierPair, ModeSet, XiGrid};

fn timed(start: Instant, v: Verdict) -> Verdict {
    v.timed(start.elapsed().as_secs_f64())
}

fn multiplier_checks() -> Vec<Verdict> {
    let start = Instant::now();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut ratio = f64::INFINITY;
    for nu in [1e-2, 1e-3, 1e-4, 1e-5] {
        for k in -8i64..=8 {
            for i in 0..=8000 {
                let xi = -400.0 + 0.1 * i as f64;
                let m = multiplier_eval(k, xi, nu);
                lo = lo.min(m);
                hi = hi.max(m);
                if k != 0 {
                    let gain = nu * xi * xi + multiplier_transport_derivative(k, xi, nu);
                    ratio = ratio.min(gain / (0.25 * nu.cbrt() * (k.abs() as f64).powf(2.0 / 3.0)));
                }
            }
        }
    }
    let profile = (0..=4000).all(|i| {
        let z = -5.0 + 0.0025 * i as f64;
        let slope_ok = z.abs() > 1.0 || phi_prime(z) == 0.25;
        let tails_ok = (z > -3.0 || phi(z) == 0.0) && (z < 3.0 || phi(z) == 1.0);
        slope_ok && tails_ok && (0.0..=1.0).contains(&phi(z))
    });
    vec![
        timed(start, Verdict::at_least("multiplier lower bound 1", lo, 1.0)),
        timed(start, Verdict::at_most("multiplier upper bound 2", hi, 2.0)),
        timed(start, Verdict::at_least("enhanced-dissipation gain over nu^(1/3)|k|^(2/3)/4", ratio, 1.0 - 1e-12)),
        timed(start, Verdict::holds("profile slope 1/4 on [-1,1], flat beyond 3", profile)),
    ]
}

fn energy_reduction() -> Result<Verdict> {
    let start = Instant::now();
    let grid = XiGrid::default_resolution();
    let pair = FourierPair::new(grid);
    let nu = 1e-3;
    let ep = EnergyParams::with_levels(2, 4)?;
    let mut worst = 0.0f64;
    for k in 1..=3i64 {
        let row: Vec<Complex64> = grid.nodes().iter().map(|&x| packet(x, 0.3 * k as f64) * (k as f64).recip()).collect();
        let (energy, _) = energy_dissipation_rows(grid, std::iter::once((k, row.as_slice())), &ep, nu, 0.0)?;
        // Direct sum of ||M (v^alpha h)||^2 with moments on the velocity side.
        let f = pair.xi_to_v(&row)?;
        let v = grid.v_nodes();
        let mut direct = 0.0;
        for a in 0..=ep.m {
            let moved: Vec<Complex64> = f.iter().zip(&v).map(|(z, x)| z * x.powi(a as i32)).collect();
            let hat = pair.v_to_xi(&moved)?;
            direct += hat
                .iter()
                .enumerate()
                .map(|(j, z)| (multiplier_eval(k, grid.node(j), nu) * z.norm()).powi(2))
                .sum::<f64>()
                * grid.delta_xi()
                / (2.0 * PI);
        }
        worst = worst.max((energy - direct).abs() / direct);
    }
    Ok(timed(start, Verdict::at_most("energy at t=0 reduces to the multiplier-weighted moments", worst, 1e-8)))
}

fn conservation_checks() -> Result<Vec<Verdict>> {
    let start = Instant::now();
    let grid = XiGrid::new(24.0, 512)?;
    let init = build_field(ModeSet::new(3)?, grid, |k, xi| {
        if k == 0 {
            1e-2 * mean_free(xi)
        } else {
            1e-2 * packet(xi, 0.4 * k as f64)
        }
    })?;
    let mut params = SimParams::new(&grid, 1e-3, 200.0 * grid.delta_xi()).nonlinear();
    params.sample_every = 20;
    let mut sim = Simulator::new(&init, params)?;
    let mass = sim.density(0);
    let samples = sim.run()?;
    let drift = samples.iter().map(|s| (s.rho[0] - mass).norm()).fold(0.0, f64::max);
    let state = sim.state();
    Ok(vec![
        timed(start, Verdict::at_most("zero-mode mass drift over 200 nonlinear steps", drift, 1e-10)),
        timed(start, Verdict::at_most("reality symmetry defect after nonlinear steps", state.reality_defect(), 1e-14)),
    ])
}

fn free_streaming_exactness() -> Result<Verdict> {
    let start = Instant::now();
    let grid = XiGrid::new(24.0, 512)?;
    let init = build_field(ModeSet::new(2)?, grid, |_, xi| packet(xi, 0.0))?;
    let steps = 64;
    let mut sim = Simulator::new(&init, SimParams::new(&grid, 0.0, steps as f64 * grid.delta_xi()))?;
    sim.run()?;
    let mut exact = true;
    for k in 0..=2usize {
        for j in 0..grid.len() {
            let src = j + k * steps;
            let expected = if src < grid.len() { init.row(k as i64)[src] } else { Complex64::new(0.0, 0.0) };
            exact &= sim.row(k)[j] == expected;
        }
    }
    Ok(timed(start, Verdict::holds("collisionless free streaming is an exact shift", exact)))
}

fn penrose_checks() -> Result<Vec<Verdict>> {
    let start = Instant::now();
    let grid = XiGrid::default_resolution();
    let tables = PenroseTable::for_modes(4, &grid, crate::penrose::PenroseBackground::Maxwellian)?;
    let parity = tables.iter().map(|t| t.parity_defect()).fold(0.0, f64::max);
    let identity = tables.iter().map(|t| t.identity_defect()).fold(0.0, f64::max);
    let tail = tables.iter().map(|t| t.kern[0].abs().max(t.kern[t.kern.len() - 1].abs())).fold(0.0, f64::max);
    let margin = penrose_margin_maxwellian(ModeSet::new(8)?, FrequencyScan::default())?;
    Ok(vec![
        timed(start, Verdict::at_most("penrose parity defect", parity, 1e-14)),
        timed(start, Verdict::at_most("penrose W = P^2 + Q^2 defect", identity, 1e-14)),
        timed(start, Verdict::at_most("penrose kernel at the velocity edge", tail, 1e-3)),
        timed(start, Verdict::at_least("maxwellian penrose margin", margin.certified(), 1e-3)),
    ])
}

fn volterra_checks() -> Result<Verdict> {
    let start = Instant::now();
    let n = 400;
    let h = 0.01;
    let mut p = VolterraProblem {
        k: 1,
        nu: 0.0,
        gamma: 1.0,
        c0: 0.0,
        dt_v: h,
        forcing: vec![Complex64::new(1.0, 0.0); n + 1],
        kernel: vec![0.5; n + 1],
        solution: None,
    };
    let theta = solve_volterra(&mut p)?;
    let err = (theta[n] - (0.5f64 * 4.0).exp()).norm() / (2.0f64).exp();
    Ok(timed(start, Verdict::at_most("constant-kernel density equation matches exp(kappa t)", err, 1e-4)))
}

/// Every invariant check, in a fixed order.
pub fn run_check_suite(tol_scale: f64) -> Result<Vec<Verdict>> {
    let mut out = multiplier_checks();
    out.push(energy_reduction()?);
    out.extend(conservation_checks()?);
    out.push(free_streaming_exactness()?);
    out.extend(penrose_checks()?);
    out.push(volterra_checks()?);
    Ok(out.into_iter().map(|v| super::common::scaled(v, tol_scale)).collect())
}
