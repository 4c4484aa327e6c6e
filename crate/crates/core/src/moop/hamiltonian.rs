use nalgebra::{DMatrix, DVector};

use super::model::{GeneralModel, WeightVector};
use super::search::{maximize_entries, SearchOptions};
use crate::{Error, Result};

/// Maximiser of the weighted Hamiltonian and the maximum itself.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMax {
    pub action: DMatrix<f64>,
    pub value: f64,
}

/// `b(t, x, a)·z_λ − Σ_i λ_i k^i(t, x, a^{:,i})`.
pub fn weighted_hamiltonian(
    t: f64,
    x: &DVector<f64>,
    z_lambda: &DVector<f64>,
    w: &WeightVector,
    gm: &GeneralModel,
    a: &DMatrix<f64>,
) -> f64 {
    let b = gm.drift(t, x, a);
    let weighted_cost: f64 = w
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, l)| l * gm.cost(i, t, x, a))
        .sum();
    b.dot(z_lambda) - weighted_cost
}

fn check_dims(x: &DVector<f64>, z: usize, w: Option<&WeightVector>, gm: &GeneralModel) -> Result<()> {
    let n = gm.n_agents();
    if x.len() != n || z != n || w.is_some_and(|w| w.len() != n) {
        return Err(Error::InvalidParameter(format!("dimension mismatch: model has {n} agents")));
    }
    Ok(())
}

/// Planner's optimal effort for aggregated sensitivity `z_λ` by box search.
pub fn hamiltonian_argmax(
    t: f64,
    x: &DVector<f64>,
    z_lambda: &DVector<f64>,
    w: &WeightVector,
    gm: &GeneralModel,
    opts: &SearchOptions,
) -> Result<HamiltonianMax> {
    check_dims(x, z_lambda.len(), Some(w), gm)?;
    let n = gm.n_agents();
    let entries: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (j, i))).collect();
    let objective = |a: &DMatrix<f64>| weighted_hamiltonian(t, x, z_lambda, w, gm, a);
    let (action, value) = maximize_entries(&objective, DMatrix::zeros(n, n), &entries, true, opts)?;
    Ok(HamiltonianMax { action, value })
}

/// The Planner's driver `f*(t, x, z_λ, λ)`: the maximised Hamiltonian.
pub fn planner_driver(
    t: f64,
    x: &DVector<f64>,
    z_lambda: &DVector<f64>,
    w: &WeightVector,
    gm: &GeneralModel,
    opts: &SearchOptions,
) -> Result<f64> {
    hamiltonian_argmax(t, x, z_lambda, w, gm, opts).map(|h| h.value)
}
