//! Eigenmode seed on the bump background: collisional growth, the collisionless
//! reference, and the Maxwellian control.

use vpfp::experiments::{collisionless_reference, growth_run, instability_gamma, ExperimentConfig, ExperimentKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::new(ExperimentKind::Instability);
    let nu = 1e-4;
    let gamma = instability_gamma(nu, cfg.epsilon0);
    let (cell, samples) = growth_run(&cfg, nu, gamma, 3.0 / 64.0, Some(30.0), true)?;
    let n0 = samples[0].nonzero_norm();
    for s in samples.iter().step_by(80) {
        println!("t={:6.2}  norm ratio {:.4}  exp(lambda_r t) {:.4}", s.t, s.nonzero_norm() / n0, (cell.lambda_r * s.t).exp());
    }
    let free = collisionless_reference(&cfg, nu, gamma, 3.0 / 64.0, 30.0)?;
    let (control_rate, _) = cell.control.unwrap_or((f64::NAN, f64::NAN));
    println!("lambda_r {:.4}: collisional rate {:.4}, collisionless {:.4}, maxwellian control {:.4}", cell.lambda_r, cell.rate, free.rate, control_rate);
    Ok(())
}
