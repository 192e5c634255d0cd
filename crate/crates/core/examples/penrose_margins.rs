//! Maxwellian and collisional Penrose margins on the imaginary axis.

use vpfp::experiments::{bump_eigen, damping_shift, instability_gamma};
use vpfp::penrose::{penrose_margin_collisional, penrose_margin_maxwellian, FrequencyScan};
use vpfp::spectral::ModeSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let maxwell = penrose_margin_maxwellian(ModeSet::new(8)?, FrequencyScan::default())?;
    println!("maxwellian: margin {:.4} at k={} lambda_i={:.3}, tail bound {:.4}", maxwell.margin, maxwell.k, maxwell.lambda_i, maxwell.tail_bound);
    for nu in [1e-3, 1e-4] {
        let gamma = instability_gamma(nu, 0.05);
        let (set, _) = bump_eigen(gamma)?;
        let c0 = damping_shift(gamma)?;
        let r = penrose_margin_collisional(&set, nu, c0, ModeSet::new(4)?, FrequencyScan::new(20.0, 401)?)?;
        println!("nu={nu:e} gamma={gamma:.4} C0={c0}: margin {:.4}, certified {:.4}", r.margin, r.certified());
    }
    Ok(())
}
