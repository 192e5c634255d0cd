//! The time-dependent multiplier and the energy functional of a decaying packet.

use num_complex::Complex64;
use vpfp::evolution::{multiplier_eval, EnergyParams, SimParams, Simulator};
use vpfp::spectral::{build_field, ModeSet, XiGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nu = 1e-3;
    println!("xi      M(k=1)   M(k=-1)");
    for xi in [-40.0, -10.0, -3.0, 0.0, 3.0, 10.0, 40.0] {
        println!("{xi:6.1}  {:.4}   {:.4}", multiplier_eval(1, xi, nu), multiplier_eval(-1, xi, nu));
    }
    let grid = XiGrid::new(48.0, 2048)?;
    let init = build_field(ModeSet::new(2)?, grid, |k, xi| match k {
        0 => Complex64::new(0.0, 0.0),
        _ => Complex64::new((-xi * xi / 2.0).exp() * 1e-3, 0.0),
    })?;
    let mut params = SimParams::new(&grid, nu, 30.0).nonlinear();
    params.energy = EnergyParams::with_levels(2, 4)?;
    params.record_energy = true;
    params.sample_every = 128;
    for s in Simulator::new(&init, params)?.run()? {
        if let Some((e, d)) = s.energy {
            println!("t={:6.2}  energy {e:.4e}  dissipation {d:.4e}", s.t);
        }
    }
    Ok(())
}
