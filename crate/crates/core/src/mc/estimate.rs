use serde::Serialize;

use super::paths::PathEnsemble;
use crate::lq::{cost, LinearContract, ActionMatrix, LqParams};
use crate::{Error, Result};

const ROUNDING_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_paths: usize,
}

impl McEstimate {
    /// Number of standard errors separating the mean from `target`.
    pub fn z_score(&self, target: f64) -> f64 {
        let gap = (self.mean - target).abs();
        if gap == 0.0 {
            0.0
        } else {
            gap / self.std_error
        }
    }

    /// `|mean − target| ≤ n_se · SE`, with an absolute floor of
    /// `1e-12 (1 + |target|)` for estimators whose samples are all equal
    /// up to rounding.
    pub fn within(&self, target: f64, n_se: f64) -> bool {
        let gap = (self.mean - target).abs();
        gap <= n_se * self.std_error || gap <= ROUNDING_FLOOR * (1.0 + target.abs())
    }
}

/// Neumaier-compensated sum, evaluated in slice order.
pub(crate) fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Sample mean and standard error of `samples`.
pub fn estimate(samples: &[f64]) -> McEstimate {
    let n = samples.len();
    let mean = compensated_sum(samples.iter().copied()) / n as f64;
    let std_error = if n > 1 {
        let ss = compensated_sum(samples.iter().map(|s| (s - mean) * (s - mean)));
        (ss / (n - 1) as f64 / n as f64).sqrt()
    } else {
        0.0
    };
    McEstimate { mean, std_error, n_paths: n }
}

/// Agent `agent`'s realised utility `ξ + Γ_i(X_T) − T k^i(a)` averaged over
/// the ensemble, which must have been simulated under the constant action `a`.
pub fn mc_agent_utility(
    ens: &PathEnsemble,
    c: &LinearContract,
    agent: usize,
    a: &ActionMatrix,
    p: &LqParams,
) -> Result<McEstimate> {
    if ens.policy().as_constant() != Some(a) {
        return Err(Error::PolicyMismatch);
    }
    if agent > 1 {
        return Err(Error::InvalidParameter(format!("agent index {agent} out of range")));
    }
    let g = p.appetence(agent);
    let effort = p.horizon() * cost(a, p)[agent];
    let samples: Vec<f64> = ens
        .terminal()
        .iter()
        .map(|x| c.payout(*x) + g[0] * x[0] + g[1] * x[1] - effort)
        .collect();
    Ok(estimate(&samples))
}

/// The Principal's CARA utility `−exp(−R_P (X_T·1 − ξ^1 − ξ^2))` averaged
/// over the ensemble.
pub fn mc_principal_utility(ens: &PathEnsemble, contracts: &[LinearContract; 2], p: &LqParams) -> Result<McEstimate> {
    let r = p.r_p();
    if r == 0.0 {
        return Err(Error::RiskNeutralPrincipal);
    }
    let samples: Vec<f64> = ens
        .terminal()
        .iter()
        .map(|x| -(-r * (x[0] + x[1] - contracts[0].payout(*x) - contracts[1].payout(*x))).exp())
        .collect();
    Ok(estimate(&samples))
}
