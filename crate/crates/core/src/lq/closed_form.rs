//! Closed forms of the linear-quadratic economy: drift and costs, the
//! Planner's and the agents' best responses, the Principal's reduced
//! objectives and their maximisers.

use nalgebra::Matrix2;

use super::types::{ActionMatrix, LqParams, ParetoWeight, SensitivityMatrix};
use crate::{Error, Result};

/// +1 when the agent works on its own project, −1 otherwise.
#[inline]
fn own_sign(project: usize, agent: usize) -> f64 {
    if project == agent {
        1.0
    } else {
        -1.0
    }
}

/// Output drift `b(a) = (a11 − a12, a22 − a21)`.
#[inline]
pub fn drift(a: &ActionMatrix) -> [f64; 2] {
    [a.get(0, 0) - a.get(0, 1), a.get(1, 1) - a.get(1, 0)]
}

/// Instantaneous effort cost of each agent; agent `i` pays for column `i`.
#[inline]
pub fn cost(a: &ActionMatrix, p: &LqParams) -> [f64; 2] {
    let mut out = [0.0; 2];
    for (agent, slot) in out.iter_mut().enumerate() {
        *slot = (0..2)
            .map(|project| 0.5 * p.cost_coeff(project, agent) * a.get(project, agent).powi(2))
            .sum();
    }
    out
}

/// Effort the Planner imposes for loadings `z` and weight `w`:
/// `a^{j,i} = ± (λ-aggregate of row j) / (λ_i k^{j,i})`.
pub fn a_star(z: &SensitivityMatrix, w: ParetoWeight, p: &LqParams) -> ActionMatrix {
    let m = Matrix2::from_fn(|project, agent| {
        own_sign(project, agent) * z.aggregate(project, w) / (w.of(agent) * p.cost_coeff(project, agent))
    });
    ActionMatrix::from_matrix(m).expect("finite inputs give finite efforts")
}

/// Nash equilibrium of the agents' effort game for loadings `z`; best
/// responses decouple because the drift is separable.
pub fn nash_effort(z: &SensitivityMatrix, p: &LqParams) -> ActionMatrix {
    let m = Matrix2::from_fn(|project, agent| {
        own_sign(project, agent) * z.get(project, agent) / p.cost_coeff(project, agent)
    });
    ActionMatrix::from_matrix(m).expect("finite inputs give finite efforts")
}

/// Principal's reduced objective `g(λ, z)` under a Planner, including the
/// risk penalty on loadings that do not sum to one.
pub fn g_planner(w: ParetoWeight, z: &SensitivityMatrix, p: &LqParams) -> f64 {
    let (l, lb) = (w.lambda(), w.complement());
    let (k11, k12, k21, k22) = (
        p.cost_coeff(0, 0),
        p.cost_coeff(0, 1),
        p.cost_coeff(1, 0),
        p.cost_coeff(1, 1),
    );
    let (z11, z12, z21, z22) = (z.get(0, 0), z.get(0, 1), z.get(1, 0), z.get(1, 1));
    let r = p.r_p();
    let m1 = l * z11 + lb * z12;
    let m2 = l * z21 + lb * z22;

    -0.5 * r * (z11 + z12 - 1.0).powi(2) - 0.5 * r * (z22 + z21 - 1.0).powi(2)
        + (m1 / (l * k11) + m1 / (lb * k12))
        + (m2 / (lb * k22) + m2 / (l * k21))
        - 0.5 * k11 * (m1 / (l * k11)).powi(2)
        - 0.5 * k21 * (m2 / (l * k21)).powi(2)
        - 0.5 * k22 * (m2 / (lb * k22)).powi(2)
        - 0.5 * k12 * (m1 / (lb * k12)).powi(2)
}

/// Optimal loadings under an exogenous Planner with weight `λ ≠ 1/2`.
///
/// Both row sums equal one, so the risk penalty vanishes at the optimum.
pub fn z_pareto(w: ParetoWeight, p: &LqParams) -> Result<SensitivityMatrix> {
    if w.is_cooperative() {
        return Err(Error::DegenerateWeight);
    }
    let (l2, lb2) = (w.lambda().powi(2), w.complement().powi(2));
    let (k11, k12, k21, k22) = (
        p.cost_coeff(0, 0),
        p.cost_coeff(0, 1),
        p.cost_coeff(1, 0),
        p.cost_coeff(1, 1),
    );
    let d1 = l2 * k11 + lb2 * k12;
    let d2 = l2 * k21 + lb2 * k22;
    SensitivityMatrix::new([
        [lb2 * k12 / d1, l2 * k11 / d1],
        [lb2 * k22 / d2, l2 * k21 / d2],
    ])
}

/// Optimal loadings when the Planner cooperates (`λ = 1/2`).
///
/// Any matrix with unit row sums is optimal. `representative` fixes the
/// first column `(z11, z21)`; without it the limit of [`z_pareto`] as
/// `λ → 1/2` is used, `z11 = k12/(k11 + k12)`, `z21 = k22/(k21 + k22)`.
pub fn z_cooperative(p: &LqParams, representative: Option<[f64; 2]>) -> Result<SensitivityMatrix> {
    let [z11, z21] = representative.unwrap_or_else(|| {
        [
            p.cost_coeff(0, 1) / (p.cost_coeff(0, 0) + p.cost_coeff(0, 1)),
            p.cost_coeff(1, 1) / (p.cost_coeff(1, 0) + p.cost_coeff(1, 1)),
        ]
    });
    SensitivityMatrix::new([[z11, 1.0 - z11], [z21, 1.0 - z21]])
}

/// Loadings maximising the Principal's objective when agents play Nash.
pub fn z_nash(p: &LqParams) -> SensitivityMatrix {
    let r = p.r_p();
    let (k11, k12, k21, k22) = (
        p.cost_coeff(0, 0),
        p.cost_coeff(0, 1),
        p.cost_coeff(1, 0),
        p.cost_coeff(1, 1),
    );
    let d1 = 1.0 + r * (k12 + k11);
    let d2 = 1.0 + r * (k21 + k22);
    SensitivityMatrix::new([
        [(1.0 + r * k12) / d1, (1.0 + r * k11) / d1],
        [(1.0 + r * k22) / d2, (1.0 + r * k21) / d2],
    ])
    .expect("positive costs give finite loadings")
}

/// Principal's reduced objective `g_NA(z, R_P)` without a Planner.
pub fn g_na(z: &SensitivityMatrix, p: &LqParams) -> f64 {
    let (k11, k12, k21, k22) = (
        p.cost_coeff(0, 0),
        p.cost_coeff(0, 1),
        p.cost_coeff(1, 0),
        p.cost_coeff(1, 1),
    );
    let (z11, z12, z21, z22) = (z.get(0, 0), z.get(0, 1), z.get(1, 0), z.get(1, 1));
    let r = p.r_p();

    -0.5 * r * (z11 + z12 - 1.0).powi(2) - 0.5 * r * (z22 + z21 - 1.0).powi(2)
        + (z11 / k11 + z12 / k12 + z21 / k21 + z22 / k22)
        - 0.5 * k11 * (z11 / k11).powi(2)
        - 0.5 * k21 * (z21 / k21).powi(2)
        - 0.5 * k22 * (z22 / k22).powi(2)
        - 0.5 * k12 * (z12 / k12).powi(2)
}

/// `lim_{R_P → ∞} g_NA(z_NA(R_P), R_P)`.
pub fn g_na_limit(p: &LqParams) -> f64 {
    let (k11, k12, k21, k22) = (
        p.cost_coeff(0, 0),
        p.cost_coeff(0, 1),
        p.cost_coeff(1, 0),
        p.cost_coeff(1, 1),
    );
    let s1 = k11 + k12;
    let s2 = k22 + k21;
    (k12 / s1) / k11 * (1.0 - k12 / (2.0 * s1))
        + (k11 / s1) / k12 * (1.0 - k11 / (2.0 * s1))
        + (k22 / s2) / k21 * (1.0 - k22 / (2.0 * s2))
        + (k21 / s2) / k22 * (1.0 - k21 / (2.0 * s2))
}

/// Continuous extensions `(g(0), g(1))` of the Pareto curve, reached by
/// weak Pareto optima.
pub fn weak_pareto_values(p: &LqParams) -> (f64, f64) {
    let g0 = 1.0 / (2.0 * p.cost_coeff(0, 0)) + 1.0 / (2.0 * p.cost_coeff(1, 0));
    let g1 = 1.0 / (2.0 * p.cost_coeff(1, 1)) + 1.0 / (2.0 * p.cost_coeff(0, 1));
    (g0, g1)
}

/// Cooperative optimum `g(1/2) = Σ 1/(2 k^{ij})`.
pub fn g_cooperative(p: &LqParams) -> f64 {
    p.k().iter().map(|k| 0.5 / k).sum()
}

/// The Pareto curve `λ ↦ g(λ, z*(λ))` on the closed interval `[0, 1]`,
/// with weak optima at the endpoints and the cooperative optimum at 1/2.
pub fn g_pareto_curve(lambda: f64, p: &LqParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!("λ = {lambda} outside [0, 1]")));
    }
    let (g0, g1) = weak_pareto_values(p);
    if lambda == 0.0 {
        return Ok(g0);
    }
    if lambda == 1.0 {
        return Ok(g1);
    }
    let w = ParetoWeight::new(lambda)?;
    let z = if w.is_cooperative() {
        z_cooperative(p, None)?
    } else {
        z_pareto(w, p)?
    };
    Ok(g_planner(w, &z, p))
}
