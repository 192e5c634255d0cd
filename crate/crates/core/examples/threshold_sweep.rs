//! A small (nu, beta) outcome matrix written to a scratch directory.

use vpfp::experiments::{emit_report, run_threshold_sweep, ExperimentConfig, ExperimentKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = ExperimentConfig::new(ExperimentKind::ThresholdSweep);
    cfg.nu = vec![1e-3];
    cfg.beta = vec![0.35, 0.45, 0.5, 0.55, 0.65];
    let report = run_threshold_sweep(&cfg)?;
    for row in report.matrix.iter().flatten() {
        println!("nu={:e} beta={:.2}  rate {:+.4}  {}", row.nu, row.beta, row.growth_rate, row.verdict);
    }
    let dir = std::env::temp_dir().join("vpfp-threshold-sweep");
    for path in emit_report(&report, &dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
