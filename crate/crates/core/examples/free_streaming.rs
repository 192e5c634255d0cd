//! Collisionless streaming with the field switched off: each density follows
//! the initial transform sampled at `k t`.

use num_complex::Complex64;
use vpfp::evolution::{SimParams, Simulator};
use vpfp::spectral::{build_field, ModeSet, XiGrid};

fn initial(xi: f64) -> Complex64 {
    let s = xi / 8.0;
    Complex64::new(1.0, -0.5 * s) * (-s * s / 2.0).exp()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = XiGrid::covering(96.0, 3.0 / 64.0)?;
    let init = build_field(ModeSet::new(3)?, grid, |k, xi| match k {
        0 => Complex64::new(0.0, 0.0),
        k if k > 0 => initial(xi),
        _ => initial(-xi).conj(),
    })?;
    let mut params = SimParams::new(&grid, 0.0, 20.0);
    params.sample_every = 64;
    for s in Simulator::new(&init, params)?.run()? {
        let errs: Vec<f64> = (1..=3).map(|k| (s.rho[k] - initial(k as f64 * s.t)).norm()).collect();
        println!("t={:6.2}  |rho_1|={:.4e}  max error={:.1e}", s.t, s.rho[1].norm(), errs.iter().cloned().fold(0.0, f64::max));
    }
    Ok(())
}
