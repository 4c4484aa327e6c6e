use std::sync::Arc;

use rayon::prelude::*;

use super::rng::PathNoise;
use crate::bsde::TimeGrid;
use crate::lq::{drift, ActionMatrix, LqParams};
use crate::{Error, Result};

pub type FeedbackFn = Arc<dyn Fn(f64, [f64; 2]) -> ActionMatrix + Send + Sync>;

/// Effort policy driving the output.
#[derive(Clone)]
pub enum Policy {
    Constant(ActionMatrix),
    Feedback(FeedbackFn),
}

impl Policy {
    pub fn action(&self, t: f64, x: [f64; 2]) -> ActionMatrix {
        match self {
            Policy::Constant(a) => *a,
            Policy::Feedback(f) => f(t, x),
        }
    }

    pub fn as_constant(&self) -> Option<&ActionMatrix> {
        match self {
            Policy::Constant(a) => Some(a),
            Policy::Feedback(_) => None,
        }
    }
}

impl From<ActionMatrix> for Policy {
    fn from(a: ActionMatrix) -> Self {
        Policy::Constant(a)
    }
}

impl std::fmt::Debug for Policy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Policy::Constant(a) => f.debug_tuple("Constant").field(a).finish(),
            Policy::Feedback(_) => f.write_str("Feedback(..)"),
        }
    }
}

/// One simulated path: `n_steps + 1` states and the `n_steps` Brownian
/// increments that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedPath {
    pub states: Vec<[f64; 2]>,
    pub increments: Vec<[f64; 2]>,
}

/// Terminal outputs of `n_paths` Euler paths. Full paths are not stored;
/// [`PathEnsemble::path`] regenerates any of them bit for bit.
#[derive(Debug, Clone)]
pub struct PathEnsemble {
    grid: TimeGrid,
    n_paths: usize,
    seed: u64,
    policy: Policy,
    terminal: Vec<[f64; 2]>,
}

fn run_path(policy: &Policy, grid: &TimeGrid, seed: u64, index: usize, mut record: impl FnMut([f64; 2], [f64; 2])) -> [f64; 2] {
    let dt = grid.dt();
    let sq = dt.sqrt();
    let mut x = [0.0; 2];
    for (k, g) in PathNoise::new(seed, index as u64).take(grid.n_steps()).enumerate() {
        let b = drift(&policy.action(grid.time(k), x));
        let dw = [sq * g[0], sq * g[1]];
        record(x, dw);
        x = [x[0] + b[0] * dt + dw[0], x[1] + b[1] * dt + dw[1]];
    }
    x
}

impl PathEnsemble {
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn policy(&self) -> &Policy {
        &self.policy
    }

    /// `X_T` for every path, in path order.
    pub fn terminal(&self) -> &[[f64; 2]] {
        &self.terminal
    }

    pub fn path(&self, index: usize) -> Result<SimulatedPath> {
        if index >= self.n_paths {
            return Err(Error::InvalidParameter(format!("path {index} out of range")));
        }
        let mut states = Vec::with_capacity(self.grid.n_steps() + 1);
        let mut increments = Vec::with_capacity(self.grid.n_steps());
        let last = run_path(&self.policy, &self.grid, self.seed, index, |x, dw| {
            states.push(x);
            increments.push(dw);
        });
        states.push(last);
        Ok(SimulatedPath { states, increments })
    }
}

/// Euler scheme `X_{k+1} = X_k + b(a) Δt + ΔW_k`, `X_0 = 0`, under the
/// measure induced by `policy`. Paths run in parallel; path `i` only ever
/// reads stream `i` of the seeded generator.
pub fn simulate_paths(policy: impl Into<Policy>, p: &LqParams, grid: TimeGrid, n_paths: usize, seed: u64) -> Result<PathEnsemble> {
    if n_paths == 0 {
        return Err(Error::InvalidParameter("n_paths must be >= 1".into()));
    }
    if (grid.horizon() - p.horizon()).abs() > 1e-12 * p.horizon() {
        return Err(Error::InvalidParameter(format!(
            "grid horizon {} differs from model horizon {}",
            grid.horizon(),
            p.horizon()
        )));
    }
    let policy = policy.into();
    let terminal = (0..n_paths)
        .into_par_iter()
        .map(|i| run_path(&policy, &grid, seed, i, |_, _| {}))
        .collect();
    Ok(PathEnsemble { grid, n_paths, seed, policy, terminal })
}
