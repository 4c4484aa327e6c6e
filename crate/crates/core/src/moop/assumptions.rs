use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::model::{GeneralModel, GrowthConstants};
use crate::{Error, Result};

const FD_STEP: f64 = 1e-5;

/// Outcome of the exponent condition on `(l, m, m̄)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionA1 {
    pub holds: bool,
    pub first_ratio: f64,
    pub second_ratio: f64,
}

/// `(l+m)/(m̄+1−l) ∨ (m̄+2−l)/(m̄+1−l) ≤ 2`.
pub fn condition_a1(gc: &GrowthConstants) -> Result<ConditionA1> {
    let denom = gc.m_under + 1.0 - gc.l;
    if !(denom > 0.0) {
        return Err(Error::Hypothesis(format!("m_under + 1 - l = {denom} must be positive")));
    }
    let first_ratio = (gc.l + gc.m) / denom;
    let second_ratio = (gc.m_under + 2.0 - gc.l) / denom;
    Ok(ConditionA1 {
        holds: first_ratio.max(second_ratio) <= 2.0,
        first_ratio,
        second_ratio,
    })
}

/// A sampled inequality: whether it held everywhere and the smallest
/// `rhs − lhs` seen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    pub worst_margin: f64,
}

impl BoundCheck {
    fn new() -> Self {
        Self { holds: true, worst_margin: f64::INFINITY }
    }

    fn record(&mut self, lhs: f64, rhs: f64) {
        let margin = rhs - lhs;
        self.worst_margin = self.worst_margin.min(margin);
        let slack = 1e-9 * (1.0 + lhs.abs().max(rhs.abs()));
        if !(margin >= -slack) {
            self.holds = false;
        }
    }
}

/// Where the growth bounds are sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplingDomain {
    pub samples: usize,
    pub seed: u64,
    pub t_max: f64,
    pub x_radius: f64,
    pub a_radius: f64,
}

impl Default for SamplingDomain {
    fn default() -> Self {
        Self { samples: 1000, seed: 42, t_max: 1.0, x_radius: 5.0, a_radius: 5.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthReport {
    pub condition_a1: ConditionA1,
    /// `|b^i| ≤ C(1 + ‖x‖ + ‖a‖)`.
    pub drift_bound: BoundCheck,
    /// `0 ≤ k^i`.
    pub cost_nonnegative: BoundCheck,
    /// `k^i ≤ C(1 + ‖x‖ + ‖a‖^{l+m})`.
    pub cost_upper: BoundCheck,
    /// `‖∇_a k^i‖ ≥ κ ‖a‖^{m̄}`, with `a` agent `i`'s own column.
    pub cost_coercive: BoundCheck,
    pub samples: usize,
}

impl GrowthReport {
    pub fn all_hold(&self) -> bool {
        self.condition_a1.holds
            && self.drift_bound.holds
            && self.cost_nonnegative.holds
            && self.cost_upper.holds
            && self.cost_coercive.holds
    }
}

fn cost_gradient(gm: &GeneralModel, agent: usize, t: f64, x: &DVector<f64>, col: &DVector<f64>) -> DVector<f64> {
    DVector::from_fn(col.len(), |j, _| {
        let mut up = col.clone();
        let mut down = col.clone();
        up[j] += FD_STEP;
        down[j] -= FD_STEP;
        (gm.cost_of_column(agent, t, x, &up) - gm.cost_of_column(agent, t, x, &down)) / (2.0 * FD_STEP)
    })
}

/// Condition (A.1) plus the drift and cost bounds sampled uniformly on
/// `[0, t_max] × ball(x_radius) × box(a_radius)`.
pub fn check_growth_conditions(gc: &GrowthConstants, gm: &GeneralModel, domain: &SamplingDomain) -> Result<GrowthReport> {
    gc.validate()?;
    let condition_a1 = condition_a1(gc)?;
    let n = gm.n_agents();
    let mut rng = ChaCha8Rng::seed_from_u64(domain.seed);
    let mut drift_bound = BoundCheck::new();
    let mut cost_nonnegative = BoundCheck::new();
    let mut cost_upper = BoundCheck::new();
    let mut cost_coercive = BoundCheck::new();

    for _ in 0..domain.samples {
        let t = rng.random_range(0.0..=domain.t_max);
        let x = DVector::from_fn(n, |_, _| rng.random_range(-domain.x_radius..=domain.x_radius));
        let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-domain.a_radius..=domain.a_radius));
        let (nx, na) = (x.norm(), a.norm());
        let b = gm.drift(t, &x, &a);
        for i in 0..n {
            drift_bound.record(b[i].abs(), gc.c * (1.0 + nx + na));
            let col = a.column(i).into_owned();
            let k = gm.cost_of_column(i, t, &x, &col);
            cost_nonnegative.record(0.0, k);
            cost_upper.record(k, gc.c * (1.0 + nx + na.powf(gc.l + gc.m)));
            let grad = cost_gradient(gm, i, t, &x, &col);
            cost_coercive.record(gc.kappa * col.norm().powf(gc.m_under), grad.norm());
        }
    }

    Ok(GrowthReport {
        condition_a1,
        drift_bound,
        cost_nonnegative,
        cost_upper,
        cost_coercive,
        samples: domain.samples,
    })
}

/// `C_f = C_b + 2 C C_a + 2 C_k N (1 + C_a^{l+m−1} (1 + C_a))`, valid when
/// `l + m ≤ 2(m̄ − 1 + l)`.
pub fn lemma_b1_constant(gc: &GrowthConstants, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one agent".into()));
    }
    let lhs = gc.l + gc.m;
    let rhs = 2.0 * (gc.m_under - 1.0 + gc.l);
    if lhs > rhs {
        return Err(Error::Hypothesis(format!("l + m = {lhs} exceeds 2(m_under - 1 + l) = {rhs}")));
    }
    let ca = gc.c_a.abs();
    Ok(gc.c_b + 2.0 * gc.c * gc.c_a + 2.0 * gc.c_k * n as f64 * (1.0 + ca.powf(lhs - 1.0) * (1.0 + gc.c_a)))
}

/// `K C_f C_p′ < 1/2`.
pub fn check_bmo_condition(gc: &GrowthConstants, c_f: f64) -> bool {
    gc.k_bmo * c_f * gc.c_p_prime < 0.5
}
