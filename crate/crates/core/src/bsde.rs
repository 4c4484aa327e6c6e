//! Value processes of contracts and a backward Euler scheme for BSDEs whose
//! coefficients are deterministic, so that `Z` is constant.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lq::{cost, solve, LqParams, Mode};
use crate::{Error, Result};

const DIVERGENCE_BOUND: f64 = 1e12;
const FD_STEP: f64 = 1e-5;

/// Uniform grid `t_k = k T / n_steps` on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    horizon: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(horizon: f64, n_steps: usize) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidParameter(format!("horizon must be > 0, got {horizon}")));
        }
        if n_steps == 0 {
            return Err(Error::InvalidParameter("n_steps must be >= 1".into()));
        }
        Ok(Self { horizon, n_steps })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.n_steps as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        if k == self.n_steps {
            self.horizon
        } else {
            k as f64 * self.dt()
        }
    }
}

/// Integrand `(t, x, z) ↦ k` of the forward value process.
pub type ValueDriver = Arc<dyn Fn(f64, &[f64], &[f64]) -> f64 + Send + Sync>;

/// `Y_t = Y_0 + ∫ driver(s, X_s, z) ds + ∫ z·dW★_s` with constant `z`.
#[derive(Clone)]
pub struct ValueProcessSpec {
    pub y0: f64,
    pub z: Vec<f64>,
    pub driver: ValueDriver,
}

impl std::fmt::Debug for ValueProcessSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ValueProcessSpec")
            .field("y0", &self.y0)
            .field("z", &self.z)
            .finish_non_exhaustive()
    }
}

impl ValueProcessSpec {
    pub fn new(y0: f64, z: Vec<f64>, driver: ValueDriver) -> Result<Self> {
        if !y0.is_finite() || z.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("y0 and z must be finite".into()));
        }
        Ok(Self { y0, z, driver })
    }

    /// Weighted combination of specs: `y0`, `z` and the driver are all
    /// combined with `weights`. Each component driver keeps seeing its own
    /// `z`, so the combined process is the weighted sum of the components.
    pub fn combine(specs: &[ValueProcessSpec], weights: &[f64]) -> Result<Self> {
        if specs.is_empty() || specs.len() != weights.len() {
            return Err(Error::InvalidParameter("need one weight per spec".into()));
        }
        let dim = specs[0].z.len();
        if specs.iter().any(|s| s.z.len() != dim) {
            return Err(Error::InvalidParameter("z dimensions differ".into()));
        }
        let y0 = specs.iter().zip(weights).map(|(s, w)| w * s.y0).sum();
        let z = (0..dim)
            .map(|j| specs.iter().zip(weights).map(|(s, w)| w * s.z[j]).sum())
            .collect();
        let parts: Vec<(f64, Vec<f64>, ValueDriver)> = weights
            .iter()
            .zip(specs)
            .map(|(&w, s)| (w, s.z.clone(), s.driver.clone()))
            .collect();
        let driver: ValueDriver = Arc::new(move |t, x, _| parts.iter().map(|(w, z, d)| w * d(t, x, z)).sum());
        Self::new(y0, z, driver)
    }
}

/// Euler recursion `Y_{k+1} = Y_k + driver(t_k, X_k, z) Δt + z·ΔW★_k` along
/// one path. `states` has `n_steps + 1` entries, `increments` `n_steps`.
pub fn forward_value_process<S: AsRef<[f64]>>(
    spec: &ValueProcessSpec,
    grid: &TimeGrid,
    states: &[S],
    increments: &[S],
) -> Result<Vec<f64>> {
    let n = grid.n_steps();
    if states.len() != n + 1 || increments.len() != n {
        return Err(Error::InvalidParameter(format!(
            "path has {} states and {} increments for {n} steps",
            states.len(),
            increments.len()
        )));
    }
    let dt = grid.dt();
    let mut y = Vec::with_capacity(n + 1);
    y.push(spec.y0);
    for k in 0..n {
        let dw = increments[k].as_ref();
        if dw.len() != spec.z.len() {
            return Err(Error::InvalidParameter("increment and z dimensions differ".into()));
        }
        let noise: f64 = spec.z.iter().zip(dw).map(|(z, w)| z * w).sum();
        let next = y[k] + (spec.driver)(grid.time(k), states[k].as_ref(), &spec.z) * dt + noise;
        y.push(next);
    }
    Ok(y)
}

/// Solution of a backward scheme at time 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BackwardSolution {
    pub y0: f64,
    pub z: Vec<f64>,
}

/// Explicit backward Euler for `Y_t = ξ(X_T) + ∫_t^T f(s, Y_s, Z) ds − ∫_t^T Z·dX_s`
/// along a given state path.
///
/// `Z` is the gradient of the terminal condition at `X_T` (central
/// differences), which is exact when `ξ` is affine. A one-entry `x_path`
/// stands for a constant state. Fails if `|y|` exceeds 1e12.
pub fn backward_euler_solve<T, F, S>(terminal: T, driver: F, grid: &TimeGrid, x_path: &[S]) -> Result<BackwardSolution>
where
    T: Fn(&[f64]) -> f64,
    F: Fn(f64, f64, &[f64]) -> f64,
    S: AsRef<[f64]>,
{
    let n = grid.n_steps();
    if x_path.len() != 1 && x_path.len() != n + 1 {
        return Err(Error::InvalidParameter(format!(
            "state path must have 1 or {} entries, got {}",
            n + 1,
            x_path.len()
        )));
    }
    let state = |k: usize| if x_path.len() == 1 { x_path[0].as_ref() } else { x_path[k].as_ref() };
    let x_t = state(n);
    let z: Vec<f64> = (0..x_t.len())
        .map(|j| {
            let mut up = x_t.to_vec();
            let mut down = x_t.to_vec();
            up[j] += FD_STEP;
            down[j] -= FD_STEP;
            (terminal(&up) - terminal(&down)) / (2.0 * FD_STEP)
        })
        .collect();

    let dt = grid.dt();
    let mut y = terminal(x_t);
    for k in (0..n).rev() {
        let dx: f64 = z.iter().zip(state(k + 1).iter().zip(state(k))).map(|(z, (b, a))| z * (b - a)).sum();
        y = y + dt * driver(grid.time(k), y, &z) - dx;
        if !(y.abs() <= DIVERGENCE_BOUND) {
            return Err(Error::Divergence { step: k, value: y });
        }
    }
    Ok(BackwardSolution { y0: y, z })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PicardResult {
    pub value: Vec<f64>,
    pub iterations: usize,
}

/// Iterates `z ← update(z)` until the sup-norm step is at most `tol`.
pub fn picard_iterate<F>(initial: &[f64], update: F, max_iter: usize, tol: f64) -> Result<PicardResult>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let mut z = initial.to_vec();
    let mut last_change = f64::INFINITY;
    for it in 1..=max_iter {
        let next = update(&z);
        if next.len() != z.len() {
            return Err(Error::InvalidParameter("update changed the dimension".into()));
        }
        last_change = next.iter().zip(&z).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if !last_change.is_finite() {
            return Err(Error::Divergence { step: it, value: last_change });
        }
        z = next;
        if last_change <= tol {
            return Ok(PicardResult { value: z, iterations: it });
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, last_change })
}

/// Value process of `agent` at the closed-form optimum of `mode`, started
/// from `y0`: `z` is the agent's loading column and the driver the agent's
/// constant effort cost.
pub fn lq_value_process_spec(mode: Mode, agent: usize, y0: f64, p: &LqParams) -> Result<ValueProcessSpec> {
    if agent > 1 {
        return Err(Error::InvalidParameter(format!("agent index {agent} out of range")));
    }
    let report = solve(mode, p)?;
    let k = cost(&report.a_star, p)[agent];
    ValueProcessSpec::new(y0, report.z_star.column(agent).to_vec(), Arc::new(move |_, _, _| k))
}

/// Contract paid to `agent` when its value process ends at `y_terminal` and
/// output at `x_terminal`: `Y_T − Γ_i(X_T)` for a risk-neutral agent.
pub fn lq_contract_payment(agent: usize, y_terminal: f64, x_terminal: [f64; 2], p: &LqParams) -> f64 {
    let g = p.appetence(agent);
    y_terminal - g[0] * x_terminal[0] - g[1] * x_terminal[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(c: f64) -> ValueDriver {
        Arc::new(move |_, _, _| c)
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(TimeGrid::new(1.0, 0).is_err());
        assert!(TimeGrid::new(0.0, 10).is_err());
        let g = TimeGrid::new(2.0, 8).unwrap();
        assert_eq!(g.dt(), 0.25);
        assert_eq!(g.time(8), 2.0);
    }

    #[test]
    fn zero_z_zero_cost_is_constant() {
        let grid = TimeGrid::new(1.0, 4).unwrap();
        let spec = ValueProcessSpec::new(1.5, vec![0.0, 0.0], constant(0.0)).unwrap();
        let states = vec![[0.0, 0.0]; 5];
        let incs = vec![[0.3, -0.1]; 4];
        let y = forward_value_process(&spec, &grid, &states, &incs[..]).unwrap();
        assert!(y.iter().all(|&v| v == 1.5));
    }

    #[test]
    fn shifting_y0_shifts_path() {
        let grid = TimeGrid::new(1.0, 3).unwrap();
        let incs = vec![[0.2, 0.1], [-0.4, 0.0], [0.1, 0.3]];
        let states = vec![[0.0, 0.0]; 4];
        let a = ValueProcessSpec::new(1.0, vec![0.5, -1.0], constant(0.7)).unwrap();
        let b = ValueProcessSpec { y0: 2.0, ..a.clone() };
        let ya = forward_value_process(&a, &grid, &states, &incs).unwrap();
        let yb = forward_value_process(&b, &grid, &states, &incs).unwrap();
        for (u, v) in ya.iter().zip(&yb) {
            assert!((v - u - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_driver_is_exact() {
        for n in [1, 7, 64] {
            let grid = TimeGrid::new(2.0, n).unwrap();
            let sol = backward_euler_solve(|_| 3.0, |_, _, _| 0.25, &grid, &[[0.0, 0.0]]).unwrap();
            assert!((sol.y0 - 3.5).abs() < 1e-13);
            assert_eq!(sol.z, vec![0.0, 0.0]);
        }
    }

    #[test]
    fn divergence_is_reported() {
        let grid = TimeGrid::new(1.0, 10).unwrap();
        let r = backward_euler_solve(|_| 1.0, |_, y, _| 1e3 * y, &grid, &[[0.0]]);
        assert!(matches!(r, Err(Error::Divergence { .. })));
    }

    #[test]
    fn picard_examples() {
        let id = picard_iterate(&[0.7], |z| z.to_vec(), 10, 1e-12).unwrap();
        assert_eq!((id.value[0], id.iterations), (0.7, 1));
        let half = picard_iterate(&[0.0], |z| vec![(z[0] + 4.0) / 2.0], 100, 1e-10).unwrap();
        assert!((half.value[0] - 4.0).abs() < 1e-9);
        let r = picard_iterate(&[1.0], |z| vec![2.0 * z[0]], 5, 1e-10);
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }
}
