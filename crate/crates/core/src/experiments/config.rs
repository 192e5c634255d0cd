use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Stability,
    Instability,
    LinearCrosscheck,
    EdScaling,
    ThresholdSweep,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Stability => "stability",
            Self::Instability => "instability",
            Self::LinearCrosscheck => "linear_crosscheck",
            Self::EdScaling => "ed_scaling",
            Self::ThresholdSweep => "threshold_sweep",
        }
    }

    /// Collision frequencies used when the config lists none.
    pub fn default_nu(&self) -> Vec<f64> {
        match self {
            Self::Stability => vec![1e-3],
            Self::Instability => vec![1e-4, 1e-5],
            Self::LinearCrosscheck => vec![1e-4],
            Self::EdScaling => vec![1e-3, 1e-4],
            Self::ThresholdSweep => vec![1e-3, 1e-4],
        }
    }
}

/// Grid settings; unset fields fall back to the experiment's own choice.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    pub xi_max: Option<f64>,
    pub n_xi: Option<usize>,
}

/// Integrator settings; unset fields fall back to the experiment's own choice.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimOverrides {
    /// Time step in grid cells per unit mode number.
    pub dt_cells: Option<usize>,
    pub t_end: Option<f64>,
    pub k_max: Option<usize>,
    pub s: Option<u32>,
    pub m: Option<u32>,
    pub sample_every: Option<usize>,
}

fn default_epsilon() -> f64 {
    0.05
}
fn default_epsilon0() -> f64 {
    0.05
}
fn default_seed_beta() -> f64 {
    0.6
}
fn default_beta() -> Vec<f64> {
    vec![0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65]
}
fn default_tol_scale() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub nu: Vec<f64>,
    /// Perturbation size in units of `nu^(1/2)`.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Background scale `gamma = nu^(1/3 - epsilon0)`.
    #[serde(default = "default_epsilon0")]
    pub epsilon0: f64,
    /// Horizon factor; derived from the dispersion bracket when absent.
    #[serde(default)]
    pub delta0: Option<f64>,
    /// Seed amplitude exponent of the nonzero mode in the instability run.
    #[serde(default = "default_seed_beta")]
    pub seed_beta: f64,
    /// Exponent ladder of the threshold sweep.
    #[serde(default = "default_beta")]
    pub beta: Vec<f64>,
    #[serde(default)]
    pub grid: GridOverrides,
    #[serde(default)]
    pub sim: SimOverrides,
    /// Rotates the phases of the packet initial data; runs are deterministic for a fixed seed.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Multiplies every verdict tolerance.
    #[serde(default = "default_tol_scale")]
    pub tol_scale: f64,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self {
            experiment,
            nu: Vec::new(),
            epsilon: default_epsilon(),
            epsilon0: default_epsilon0(),
            delta0: None,
            seed_beta: default_seed_beta(),
            beta: default_beta(),
            grid: GridOverrides::default(),
            sim: SimOverrides::default(),
            seed: 0,
            out: None,
            tol_scale: default_tol_scale(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The configured collision frequencies, or the experiment defaults.
    pub fn nu_values(&self) -> Vec<f64> {
        if self.nu.is_empty() {
            self.experiment.default_nu()
        } else {
            self.nu.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &nu in &self.nu_values() {
            if !(nu > 0.0 && nu <= 0.1) {
                return Err(Error::Config(format!("nu={nu} outside (0, 0.1]")));
            }
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!("epsilon={} must be nonnegative", self.epsilon)));
        }
        if !(self.epsilon0 > 0.0 && self.epsilon0 < 1.0 / 3.0) {
            return Err(Error::Config(format!("epsilon0={} outside (0, 1/3)", self.epsilon0)));
        }
        if let Some(d) = self.delta0 {
            if !(d > 0.0) {
                return Err(Error::Config(format!("delta0={d} must be positive")));
            }
        }
        if !(self.seed_beta > 0.5) {
            return Err(Error::Config(format!("seed_beta={} must exceed 1/2", self.seed_beta)));
        }
        if self.beta.iter().any(|b| !(*b > 0.0 && b.is_finite())) {
            return Err(Error::Config("beta ladder entries must be positive".into()));
        }
        if !(self.tol_scale > 0.0) {
            return Err(Error::Config(format!("tol_scale={} must be positive", self.tol_scale)));
        }
        if let Some(n) = self.grid.n_xi {
            if n > 1 << 15 {
                return Err(Error::Config(format!("n_xi={n} is beyond the desk-scale box")));
            }
        }
        if let Some(k) = self.sim.k_max {
            if k == 0 || k > 16 {
                return Err(Error::Config(format!("k_max={k} outside 1..=16")));
            }
        }
        Ok(())
    }
}
