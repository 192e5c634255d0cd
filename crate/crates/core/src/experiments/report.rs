use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::Result;
use crate::evolution::Sample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|measured - target| <= tolerance`.
    Within,
    /// `measured <= target + tolerance`.
    AtMost,
    /// `measured >= target - tolerance`.
    AtLeast,
    /// A yes/no property, recorded as `1` or `0`; tolerance scaling leaves it alone.
    Holds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub measured: f64,
    pub target: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
    pub wall_time_s: f64,
}

impl Verdict {
    pub fn new(name: impl Into<String>, comparison: Comparison, measured: f64, target: f64, tolerance: f64) -> Self {
        let passed = measured.is_finite()
            && match comparison {
                Comparison::Within => (measured - target).abs() <= tolerance,
                Comparison::AtMost => measured <= target + tolerance,
                Comparison::AtLeast => measured >= target - tolerance,
                Comparison::Holds => measured == 1.0,
            };
        Self { name: name.into(), measured, target, tolerance, comparison, passed, wall_time_s: 0.0 }
    }

    pub fn within(name: impl Into<String>, measured: f64, target: f64, tolerance: f64) -> Self {
        Self::new(name, Comparison::Within, measured, target, tolerance)
    }

    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(name, Comparison::AtMost, measured, bound, 0.0)
    }

    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(name, Comparison::AtLeast, measured, bound, 0.0)
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, Comparison::Holds, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    pub fn timed(mut self, seconds: f64) -> Self {
        self.wall_time_s = seconds;
        self
    }

    pub fn line(&self) -> String {
        let relation = match self.comparison {
            Comparison::Within => format!("= {:.6e} +/- {:.1e}", self.target, self.tolerance),
            Comparison::AtMost => format!("<= {:.6e}", self.target + self.tolerance),
            Comparison::AtLeast => format!(">= {:.6e}", self.target - self.tolerance),
            Comparison::Holds => {
                let state = if self.measured == 1.0 { "holds" } else { "does not hold" };
                return format!("{} {}: {state} ({:.2}s)", if self.passed { "PASS" } else { "FAIL" }, self.name, self.wall_time_s);
            }
        };
        format!(
            "{} {}: {:.6e} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            relation,
            self.wall_time_s
        )
    }
}

/// One line of `series.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub t: f64,
    pub k: i64,
    pub re_rho: f64,
    pub im_rho: f64,
    #[serde(rename = "abs_E")]
    pub abs_e: f64,
    pub energy_s_m: Option<f64>,
    pub dissipation_s_m: Option<f64>,
}

impl SeriesRow {
    /// One row per nonnegative mode of every sample.
    pub fn from_samples(samples: &[Sample]) -> Vec<Self> {
        let mut rows = Vec::new();
        for s in samples {
            for (k, rho) in s.rho.iter().enumerate() {
                rows.push(Self {
                    t: s.t,
                    k: k as i64,
                    re_rho: rho.re,
                    im_rho: rho.im,
                    abs_e: s.field[k],
                    energy_s_m: s.energy.map(|e| e.0),
                    dissipation_s_m: s.energy.map(|e| e.1),
                });
            }
        }
        rows
    }
}

/// One cell of the threshold sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixRow {
    pub nu: f64,
    pub beta: f64,
    pub growth_rate: f64,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub series: Vec<SeriesRow>,
    pub verdicts: Vec<Verdict>,
    pub fitted_rates: BTreeMap<String, f64>,
    pub matrix: Option<Vec<MatrixRow>>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(config: ExperimentConfig) -> Self {
        Self { config, series: Vec::new(), verdicts: Vec::new(), fitted_rates: BTreeMap::new(), matrix: None, wall_time_s: 0.0 }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn summary(&self) -> Summary {
        Summary {
            experiment: self.config.experiment.name().to_string(),
            config: self.config.clone(),
            verdicts: self.verdicts.clone(),
            fitted_rates: self.fitted_rates.clone(),
            wall_time_s: self.wall_time_s,
        }
    }
}

/// Contents of `summary.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub verdicts: Vec<Verdict>,
    pub fitted_rates: BTreeMap<String, f64>,
    pub wall_time_s: f64,
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T], header: &[&str]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path).map_err(csv_error)?;
    w.write_record(header).map_err(csv_error)?;
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> crate::Error {
    crate::Error::Io(std::io::Error::other(e))
}

pub const SERIES_HEADER: [&str; 7] = ["t", "k", "re_rho", "im_rho", "abs_E", "energy_s_m", "dissipation_s_m"];
pub const MATRIX_HEADER: [&str; 4] = ["nu", "beta", "growth_rate", "verdict"];

/// Write `series.csv`, `summary.json` and, for sweeps, `matrix.csv`; returns the written paths.
pub fn emit_report(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let series = dir.join("series.csv");
    write_csv(&series, &report.series, &SERIES_HEADER)?;
    let summary = dir.join("summary.json");
    fs::write(&summary, serde_json::to_string_pretty(&report.summary())? + "\n")?;
    let mut paths = vec![series, summary];
    if let Some(m) = &report.matrix {
        let matrix = dir.join("matrix.csv");
        write_csv(&matrix, m, &MATRIX_HEADER)?;
        paths.push(matrix);
    }
    Ok(paths)
}

pub fn exit_code(report: &RunReport) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::ExperimentKind;

    #[test]
    fn one_sided_and_two_sided_verdicts() {
        assert!(Verdict::within("a", 1.05, 1.0, 0.1).passed);
        assert!(!Verdict::within("a", 1.2, 1.0, 0.1).passed);
        assert!(Verdict::at_most("b", 3.0, 3.0).passed);
        assert!(!Verdict::at_least("c", 2.0, 3.0).passed);
        assert!(!Verdict::at_most("d", f64::NAN, 3.0).passed);
    }

    #[test]
    fn empty_report_writes_headers_and_exits_cleanly() {
        let dir = std::env::temp_dir().join(format!("vpfp-empty-{}", std::process::id()));
        let report = RunReport::new(ExperimentConfig::new(ExperimentKind::Stability));
        emit_report(&report, &dir).unwrap();
        let csv = fs::read_to_string(dir.join("series.csv")).unwrap();
        assert_eq!(csv.trim(), "t,k,re_rho,im_rho,abs_E,energy_s_m,dissipation_s_m");
        assert_eq!(exit_code(&report), 0);
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn populated_rows_follow_a_single_header() {
        let dir = std::env::temp_dir().join(format!("vpfp-rows-{}", std::process::id()));
        let mut report = RunReport::new(ExperimentConfig::new(ExperimentKind::ThresholdSweep));
        report.matrix = Some(vec![MatrixRow { nu: 1e-3, beta: 0.5, growth_rate: 0.25, verdict: "growth".into() }]);
        report.verdicts.push(Verdict::holds("x", false));
        emit_report(&report, &dir).unwrap();
        let csv = fs::read_to_string(dir.join("matrix.csv")).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines, ["nu,beta,growth_rate,verdict", "0.001,0.5,0.25,growth"]);
        assert_eq!(exit_code(&report), 1);
        fs::remove_dir_all(dir).unwrap();
    }
}
