//! Linear Landau damping around the Maxwellian, compared with the closed-form density.

use vpfp::experiments::{landau_crosscheck, packet, ExperimentConfig, ExperimentKind};
use vpfp::spectral::XiGrid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::new(ExperimentKind::LinearCrosscheck);
    let (gap, samples) = landau_crosscheck(&cfg, XiGrid::covering(48.0, 3.0 / 64.0)?, |xi| packet(xi, 0.0))?;
    for s in samples.iter().step_by(64) {
        println!("t={:6.2}  |E_1|={:.4e}", s.t, s.field[1]);
    }
    println!("relative error against the closed form: {gap:.2e}");
    Ok(())
}
