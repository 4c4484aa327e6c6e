use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::lq::LqParams;
use crate::moop::GrowthConstants;

fn default_horizon() -> f64 {
    1.0
}
fn default_a_max() -> f64 {
    3.0
}
fn default_paths() -> usize {
    100_000
}
fn default_steps() -> usize {
    100
}
fn default_seed() -> u64 {
    42
}
fn default_resolution() -> f64 {
    0.05
}
fn default_lambda_tol() -> f64 {
    1e-8
}
fn default_nash_pareto_tol() -> f64 {
    1e-9
}
fn default_grid_size() -> usize {
    99
}
fn default_r_list() -> Vec<f64> {
    vec![0.1, 0.25, 0.5, 1.0, 50.0]
}
fn default_verify_lambdas() -> Vec<f64> {
    vec![0.2, 1.0 / 3.0, 0.45, 0.6, 0.8]
}
fn default_assumption_samples() -> usize {
    1000
}

/// JSON run configuration.
///
/// `k` is row-major by project: `[[k11, k12], [k21, k22]]`, where `kji` is
/// the cost coefficient of agent `i` on project `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub k: [[f64; 2]; 2],
    pub r_p: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default = "default_horizon")]
    pub horizon: f64,
    #[serde(default)]
    pub r0: [f64; 2],
    #[serde(default = "default_a_max")]
    pub a_max: f64,
    #[serde(default)]
    pub growth: Option<GrowthConstants>,
    #[serde(default = "default_paths")]
    pub paths: usize,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_resolution")]
    pub grid_resolution: f64,
    #[serde(default = "default_lambda_tol")]
    pub lambda_tol: f64,
    #[serde(default = "default_nash_pareto_tol")]
    pub nash_pareto_tol: f64,
    #[serde(default = "default_grid_size")]
    pub grid_size: usize,
    #[serde(default = "default_r_list")]
    pub r_list: Vec<f64>,
    #[serde(default = "default_verify_lambdas")]
    pub verify_lambdas: Vec<f64>,
    #[serde(default = "default_assumption_samples")]
    pub assumption_samples: usize,
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.params()?;
        if self.paths == 0 || self.steps == 0 {
            return Err(CliError::Config("paths and steps must be >= 1".into()));
        }
        if !(self.grid_resolution > 0.0) {
            return Err(CliError::Config("grid_resolution must be > 0".into()));
        }
        if !(self.lambda_tol > 0.0 && self.nash_pareto_tol > 0.0) {
            return Err(CliError::Config("tolerances must be > 0".into()));
        }
        if let Some(g) = &self.growth {
            g.validate().map_err(|e| CliError::Config(format!("growth: {e}")))?;
        }
        Ok(())
    }

    pub fn params(&self) -> Result<LqParams, CliError> {
        LqParams::new(self.k, self.r_p, self.gamma, self.horizon, self.r0, self.a_max)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}
