use nalgebra::{DMatrix, DVector};

use super::model::GeneralModel;
use super::search::{maximize_entries, SearchOptions};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NashSolution {
    pub action: DMatrix<f64>,
    /// Best-response sweeps that moved the profile by at least `tol`.
    pub iterations: usize,
}

/// Agent `agent`'s objective `b(t, x, a)·z^{:,agent} − k^agent(t, x, a^{:,agent})`.
pub fn agent_objective(t: f64, x: &DVector<f64>, z: &DMatrix<f64>, gm: &GeneralModel, agent: usize, a: &DMatrix<f64>) -> f64 {
    gm.drift(t, x, a).dot(&z.column(agent)) - gm.cost(agent, t, x, a)
}

/// Gauss–Seidel best-response iteration: each column in turn maximises its
/// agent's objective given the others, until a full sweep moves no entry
/// by `tol` or more. Fails if `max_iter` moving sweeps do not settle.
pub fn nash_fixed_point(
    t: f64,
    x: &DVector<f64>,
    z: &DMatrix<f64>,
    gm: &GeneralModel,
    start: Option<&DMatrix<f64>>,
    max_iter: usize,
    tol: f64,
    opts: &SearchOptions,
) -> Result<NashSolution> {
    let n = gm.n_agents();
    if x.len() != n || z.nrows() != n || z.ncols() != n {
        return Err(Error::InvalidParameter(format!("dimension mismatch: model has {n} agents")));
    }
    if max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
    }
    let mut a = start.cloned().unwrap_or_else(|| DMatrix::zeros(n, n));
    let mut last_change = f64::INFINITY;
    for sweep in 0..=max_iter {
        let before = a.clone();
        for agent in 0..n {
            let entries: Vec<(usize, usize)> = (0..n).map(|j| (j, agent)).collect();
            let objective = |m: &DMatrix<f64>| agent_objective(t, x, z, gm, agent, m);
            a = maximize_entries(&objective, a, &entries, false, opts)?.0;
        }
        last_change = (&a - &before).abs().max();
        if last_change < tol {
            return Ok(NashSolution { action: a, iterations: sweep });
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, last_change })
}

/// Per-agent Nash drivers `f*_NA^i(t, x, z)` evaluated at the fixed point.
pub fn nash_driver(
    t: f64,
    x: &DVector<f64>,
    z: &DMatrix<f64>,
    gm: &GeneralModel,
    max_iter: usize,
    tol: f64,
    opts: &SearchOptions,
) -> Result<DVector<f64>> {
    let eq = nash_fixed_point(t, x, z, gm, None, max_iter, tol, opts)?;
    Ok(DVector::from_fn(gm.n_agents(), |i, _| agent_objective(t, x, z, gm, i, &eq.action)))
}
