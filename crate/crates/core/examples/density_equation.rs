//! Damped density equation around the bump against a frozen-background simulation.

use vpfp::experiments::{instability_gamma, packet, volterra_crosscheck, ExperimentConfig, ExperimentKind};
use vpfp::spectral::XiGrid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::new(ExperimentKind::LinearCrosscheck);
    let nu = 1e-4;
    let gamma = instability_gamma(nu, cfg.epsilon0);
    let (gap, frozen, maxwell) = volterra_crosscheck(&cfg, nu, gamma, XiGrid::covering(96.0, 3.0 / 64.0)?, |xi| packet(xi, 0.0))?;
    for (a, b) in frozen.iter().zip(&maxwell).step_by(128) {
        println!("t={:6.2}  bump |rho_1|={:.4e}  maxwellian |rho_1|={:.4e}", a.t, a.rho[1].norm(), b.rho[1].norm());
    }
    println!("gamma={gamma:.4}, relative gap to the density equation: {gap:.2e}");
    Ok(())
}
