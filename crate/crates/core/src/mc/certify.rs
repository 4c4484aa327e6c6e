//! Brute-force certificates over constant actions on a grid of the box
//! `[−a_max, a_max]^{2×2}`, using exact risk-neutral utilities.
//!
//! Under a linear contract an agent's utility is a sum of one-variable
//! functions of the four action entries, so each certificate tabulates
//! those functions once and scans sums of table entries.

use rayon::prelude::*;
use serde::Serialize;

use crate::lq::{agent_utility_analytic, ActionMatrix, LinearContract, LqParams};
use crate::{Error, Result};

/// Strict-improvement threshold.
pub const IMPROVEMENT_TOL: f64 = 1e-9;

/// Entries in scan order: (project, agent).
const ENTRIES: [(usize, usize); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub passed: bool,
    pub points_scanned: u64,
    pub resolution: f64,
    pub candidate_utilities: [f64; 2],
    /// A dominating action (Pareto) or profitable profile (Nash).
    pub witness: Option<ActionMatrix>,
    pub witness_utilities: Option<[f64; 2]>,
    /// The agent whose unilateral deviation is profitable (Nash only).
    pub deviating_agent: Option<usize>,
}

/// `{j · res : |j · res| ≤ a_max}`.
pub fn action_grid(a_max: f64, resolution: f64) -> Result<Vec<f64>> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::InvalidParameter(format!("grid resolution must be > 0, got {resolution}")));
    }
    let half = (a_max / resolution + 1e-9).floor() as i64;
    Ok((-half..=half).map(|j| j as f64 * resolution).collect())
}

/// `U_i(a) = constant_i + Σ_e table[i][e][value index of entry e]`.
struct Tables {
    constant: [f64; 2],
    table: [[Vec<f64>; 4]; 2],
}

fn tabulate(contracts: &[LinearContract; 2], p: &LqParams, grid: &[f64]) -> Tables {
    let t = p.horizon();
    let constant = std::array::from_fn(|i| contracts[i].intercept);
    let table = std::array::from_fn(|i| {
        let g = p.appetence(i);
        let beta = contracts[i].loading;
        std::array::from_fn(|e| {
            let (j, m) = ENTRIES[e];
            // b_j = a_jj − a_j(1−j): own project enters with +, the other with −.
            let sign = if j == m { 1.0 } else { -1.0 };
            let slope = sign * (beta[j] + g[j]) * t;
            let curvature = if m == i { 0.5 * t * p.cost_coeff(j, m) } else { 0.0 };
            grid.iter().map(|v| slope * v - curvature * v * v).collect()
        })
    });
    Tables { constant, table }
}

fn utilities(contracts: &[LinearContract; 2], a: &ActionMatrix, p: &LqParams) -> [f64; 2] {
    std::array::from_fn(|i| agent_utility_analytic(&contracts[i], a, i, p))
}

fn action_at(grid: &[f64], idx: [usize; 4]) -> ActionMatrix {
    let mut a = ActionMatrix::zero();
    for (e, &(j, m)) in ENTRIES.iter().enumerate() {
        a.set(j, m, grid[idx[e]]);
    }
    a
}

/// Pareto certificate: passes if no grid action gives both agents at least
/// their candidate utility and one of them more than `1e-9` extra.
pub fn certify_pareto(
    candidate: &ActionMatrix,
    contracts: &[LinearContract; 2],
    p: &LqParams,
    resolution: f64,
) -> Result<Certificate> {
    let grid = action_grid(p.a_max(), resolution)?;
    let n = grid.len();
    let star = utilities(contracts, candidate, p);
    let tb = tabulate(contracts, p, &grid);
    let target = [star[0] - tb.constant[0], star[1] - tb.constant[1]];

    let found = (0..n * n).into_par_iter().find_map_first(|outer| {
        let (i0, i1) = (outer / n, outer % n);
        let base0 = tb.table[0][0][i0] + tb.table[0][1][i1];
        let base1 = tb.table[1][0][i0] + tb.table[1][1][i1];
        for i2 in 0..n {
            let mid0 = base0 + tb.table[0][2][i2];
            let mid1 = base1 + tb.table[1][2][i2];
            for i3 in 0..n {
                let u0 = mid0 + tb.table[0][3][i3];
                let u1 = mid1 + tb.table[1][3][i3];
                if u0 >= target[0]
                    && u1 >= target[1]
                    && (u0 > target[0] + IMPROVEMENT_TOL || u1 > target[1] + IMPROVEMENT_TOL)
                {
                    return Some([i0, i1, i2, i3]);
                }
            }
        }
        None
    });

    let witness = found.map(|idx| action_at(&grid, idx));
    Ok(Certificate {
        passed: witness.is_none(),
        points_scanned: (n as u64).pow(4),
        resolution,
        candidate_utilities: star,
        witness_utilities: witness.as_ref().map(|a| utilities(contracts, a, p)),
        witness,
        deviating_agent: None,
    })
}

/// Nash certificate: passes if no agent gains more than `1e-9` by replacing
/// its own column with any grid column while the other column stays put.
pub fn certify_nash(
    candidate: &ActionMatrix,
    contracts: &[LinearContract; 2],
    p: &LqParams,
    resolution: f64,
) -> Result<Certificate> {
    let grid = action_grid(p.a_max(), resolution)?;
    let n = grid.len();
    let star = utilities(contracts, candidate, p);

    let mut scanned = 0u64;
    for agent in 0..2 {
        let found = (0..n * n).into_par_iter().find_map_first(|idx| {
            let mut a = *candidate;
            a.set(0, agent, grid[idx / n]);
            a.set(1, agent, grid[idx % n]);
            let u = agent_utility_analytic(&contracts[agent], &a, agent, p);
            (u > star[agent] + IMPROVEMENT_TOL).then_some(a)
        });
        scanned += (n * n) as u64;
        if let Some(a) = found {
            return Ok(Certificate {
                passed: false,
                points_scanned: scanned,
                resolution,
                candidate_utilities: star,
                witness_utilities: Some(utilities(contracts, &a, p)),
                witness: Some(a),
                deviating_agent: Some(agent),
            });
        }
    }
    Ok(Certificate {
        passed: true,
        points_scanned: scanned,
        resolution,
        candidate_utilities: star,
        witness: None,
        witness_utilities: None,
        deviating_agent: None,
    })
}
