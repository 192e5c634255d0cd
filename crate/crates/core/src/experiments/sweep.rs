use std::time::Instant;

use rayon::prelude::*;

use super::common::scaled;
use super::config::ExperimentConfig;
use super::instability::growth_run;
use super::report::{MatrixRow, RunReport, Verdict};
use crate::error::Result;

const GROWTH: &str = "growth";
const DECAY: &str = "decay";

/// `gamma = nu^(2 beta / 3)`, so that `beta = 1/2` sits on the `nu^(1/3)` threshold scale.
pub fn sweep_gamma(nu: f64, beta: f64) -> f64 {
    nu.powf(2.0 * beta / 3.0)
}

/// Every `(nu, beta)` cell, in parallel; rows are ordered by `nu` then `beta`.
pub fn sweep_matrix(cfg: &ExperimentConfig) -> Result<Vec<MatrixRow>> {
    let mut cells = Vec::new();
    for &nu in &cfg.nu_values() {
        for &beta in &cfg.beta {
            cells.push((nu, beta));
        }
    }
    cells
        .into_par_iter()
        .map(|(nu, beta)| {
            let (cell, _) = growth_run(cfg, nu, sweep_gamma(nu, beta), 3.0 / 32.0, None, false)?;
            let growth_rate = cell.amplification.ln() / cell.horizon;
            let verdict = if cell.amplification > 1.0 { GROWTH } else { DECAY };
            Ok(MatrixRow { nu, beta, growth_rate, verdict: verdict.to_string() })
        })
        .collect()
}

/// True when no growing cell follows a decaying one as `beta` increases.
pub fn monotone(rows: &[&MatrixRow]) -> bool {
    let mut sorted: Vec<&&MatrixRow> = rows.iter().collect();
    sorted.sort_by(|a, b| a.beta.total_cmp(&b.beta));
    !sorted.windows(2).any(|w| w[0].verdict == DECAY && w[1].verdict == GROWTH)
}

/// Midpoint between the last growing and the first decaying `beta`.
pub fn transition(rows: &[&MatrixRow]) -> Option<f64> {
    let last_growth = rows.iter().filter(|r| r.verdict == GROWTH).map(|r| r.beta).fold(None, |a: Option<f64>, b| Some(a.map_or(b, |a| a.max(b))))?;
    let first_decay = rows.iter().filter(|r| r.verdict == DECAY).map(|r| r.beta).fold(None, |a: Option<f64>, b| Some(a.map_or(b, |a| a.min(b))))?;
    Some(0.5 * (last_growth + first_decay))
}

pub fn run_threshold_sweep(cfg: &ExperimentConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(cfg.clone());
    let matrix = sweep_matrix(cfg)?;
    let elapsed = start.elapsed().as_secs_f64();
    let mut nus = cfg.nu_values();
    nus.sort_by(|a, b| b.total_cmp(a));
    nus.dedup();
    for &nu in &nus {
        let row: Vec<&MatrixRow> = matrix.iter().filter(|r| r.nu == nu).collect();
        if row.is_empty() {
            continue;
        }
        report.verdicts.push(Verdict::holds(format!("monotone transition in beta (nu={nu:e})"), monotone(&row)).timed(elapsed));
        if let Some(b) = transition(&row) {
            report.fitted_rates.insert(format!("transition_beta@nu={nu:e}"), b);
        }
    }
    if let Some(&smallest) = nus.last() {
        let row: Vec<&MatrixRow> = matrix.iter().filter(|r| r.nu == smallest).collect();
        if !row.is_empty() {
            let measured = transition(&row).unwrap_or(f64::NAN);
            report.verdicts.push(scaled(
                Verdict::within(format!("transition straddles beta=1/2 (nu={smallest:e})"), measured, 0.5, 0.1).timed(elapsed),
                cfg.tol_scale,
            ));
        }
    }
    report.matrix = Some(matrix);
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::ExperimentKind;

    fn row(beta: f64, verdict: &str) -> MatrixRow {
        MatrixRow { nu: 1e-4, beta, growth_rate: 0.0, verdict: verdict.into() }
    }

    #[test]
    fn transition_logic() {
        let rows = [row(0.6, DECAY), row(0.4, GROWTH), row(0.5, GROWTH)];
        let refs: Vec<&MatrixRow> = rows.iter().collect();
        assert!(monotone(&refs));
        assert_eq!(transition(&refs), Some(0.55));
        let bad = [row(0.4, DECAY), row(0.5, GROWTH)];
        assert!(!monotone(&bad.iter().collect::<Vec<_>>()));
    }

    #[test]
    fn empty_ladder_gives_an_empty_report() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::ThresholdSweep);
        cfg.beta.clear();
        let r = run_threshold_sweep(&cfg).unwrap();
        assert!(r.verdicts.is_empty());
        assert_eq!(r.matrix, Some(vec![]));
    }
}
