//! Experiment drivers, the invariant suite and report emission.

mod check;
mod common;
mod config;
mod crosscheck;
mod ed_scaling;
mod instability;
mod report;
mod stability;
mod sweep;

pub use check::run_check_suite;
pub use common::{bump_eigen, e_folding_time, packet, seeded_state, total_weighted_norm, WIDE_DELTA};
pub use config::{ExperimentConfig, ExperimentKind, GridOverrides, SimOverrides};
pub use crosscheck::{damping_shift, landau_crosscheck, run_linear_crosscheck, volterra_crosscheck};
pub use ed_scaling::{e_folding_times, predicted_e_folding, run_ed_scaling};
pub use instability::{collisionless_reference, default_delta0, growth_run, instability_gamma, run_instability, GrowthCell};
pub use report::{emit_report, exit_code, Comparison, MatrixRow, RunReport, SeriesRow, Summary, Verdict};
pub use stability::{field_space_time_norm, fitted_envelope_exponent, run_stability, stability_initial_data};
pub use sweep::{monotone, run_threshold_sweep, sweep_gamma, sweep_matrix, transition};

use crate::error::Result;

/// Dispatch on the configured experiment.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunReport> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentKind::Stability => run_stability(cfg),
        ExperimentKind::Instability => run_instability(cfg),
        ExperimentKind::LinearCrosscheck => run_linear_crosscheck(cfg),
        ExperimentKind::EdScaling => run_ed_scaling(cfg),
        ExperimentKind::ThresholdSweep => run_threshold_sweep(cfg),
    }
}
