//! Spatially homogeneous Fokker-Planck relaxation of the bump, against the exact solution.

use num_complex::Complex64;
use vpfp::backgrounds::{default_bump, fe_hat_exact, BackgroundSet};
use vpfp::evolution::{SimParams, Simulator};
use vpfp::spectral::{build_field, ModeSet, XiGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = XiGrid::default_resolution();
    let set = BackgroundSet::new(1.0, 0.1, default_bump())?;
    let nu = 0.1;
    let init = build_field(ModeSet::new(1)?, grid, |k, xi| {
        Complex64::new(if k == 0 { fe_hat_exact(&set, nu, 0.0, xi) } else { 0.0 }, 0.0)
    })?;
    let mut sim = Simulator::new(&init, SimParams::new(&grid, nu, 5.0))?;
    let probe = grid.zero_index() + 213;
    while sim.time() < 5.0 - 1e-9 {
        sim.step()?;
        let worst = (0..grid.len())
            .map(|j| (sim.row(0)[j] - fe_hat_exact(&set, nu, sim.time(), grid.node(j))).norm())
            .fold(0.0, f64::max);
        if sim.time() % 1.0 < grid.delta_xi() {
            println!("t={:.2}  xi={:.2}  value={:+.6e}  sup error={worst:.2e}", sim.time(), grid.node(probe), sim.row(0)[probe].re);
        }
    }
    Ok(())
}
