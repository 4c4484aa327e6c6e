use super::closed_form::{
    a_star, cost, drift, g_cooperative, g_na, g_planner, nash_effort, z_cooperative, z_nash, z_pareto,
};
use super::types::{ActionMatrix, LinearContract, LqParams, Mode, ParetoWeight, SensitivityMatrix};
use crate::{Error, Result};

/// Contracts implementing efforts `a` with loadings `z` while holding each
/// agent exactly at its reservation utility.
///
/// Agent `i` receives `R_0^i + T k^i(a) − T z^{:,i}·b(a) + (z^{:,i} − Γ_i)·X_T`:
/// the fixed part refunds the effort cost net of the expected loading
/// payout, and the appetence term is taxed away.
pub fn saturating_contracts(z: &SensitivityMatrix, a: &ActionMatrix, p: &LqParams) -> [LinearContract; 2] {
    let b = drift(a);
    let k = cost(a, p);
    let t = p.horizon();
    let r0 = p.r0();
    std::array::from_fn(|agent| {
        let col = z.column(agent);
        let gamma = p.appetence(agent);
        LinearContract::new(
            r0[agent] + t * k[agent] - t * (col[0] * b[0] + col[1] * b[1]),
            [col[0] - gamma[0], col[1] - gamma[1]],
        )
    })
}

/// Optimal contracts under a Planner with weight `w`. At `λ = 1/2` the
/// canonical cooperative loadings are used.
pub fn contracts_pareto(w: ParetoWeight, p: &LqParams) -> Result<[LinearContract; 2]> {
    if w.is_cooperative() {
        return contracts_cooperative(p, None);
    }
    let z = z_pareto(w, p)?;
    Ok(saturating_contracts(&z, &a_star(&z, w, p), p))
}

/// Optimal contracts for a cooperative Planner; `representative` picks
/// `(z11, z21)` from the optimal family.
pub fn contracts_cooperative(p: &LqParams, representative: Option<[f64; 2]>) -> Result<[LinearContract; 2]> {
    let z = z_cooperative(p, representative)?;
    Ok(saturating_contracts(&z, &a_star(&z, ParetoWeight::cooperative(), p), p))
}

/// Optimal contracts when agents play Nash.
pub fn contracts_nash(p: &LqParams) -> [LinearContract; 2] {
    let z = z_nash(p);
    saturating_contracts(&z, &nash_effort(&z, p), p)
}

/// Expected utility of a risk-neutral agent holding contract `c` while the
/// constant effort `a` is exerted, with `X_0 = 0` so `E[X_T] = T b(a)`.
pub fn agent_utility_analytic(c: &LinearContract, a: &ActionMatrix, agent: usize, p: &LqParams) -> f64 {
    let t = p.horizon();
    let b = drift(a);
    let mean_x = [t * b[0], t * b[1]];
    let gamma = p.appetence(agent);
    c.payout(mean_x) + gamma[0] * mean_x[0] + gamma[1] * mean_x[1] - t * cost(a, p)[agent]
}

/// Optimal value `g*` of the Principal's reduced objective in `mode`.
pub fn optimal_g(mode: Mode, p: &LqParams) -> Result<f64> {
    match mode {
        Mode::Cooperative => Ok(g_cooperative(p)),
        Mode::Pareto(w) => Ok(g_planner(w, &z_pareto(w, p)?, p)),
        Mode::Nash => Ok(g_na(&z_nash(p), p)),
    }
}

/// Principal's expected CARA utility at the optimum,
/// `−exp(−R_P (T g* − R_0^1 − R_0^2))`.
///
/// With zero reservation utilities this is `−exp(−R_P T g*)`.
pub fn principal_value_analytic(mode: Mode, p: &LqParams) -> Result<f64> {
    if p.r_p() == 0.0 {
        return Err(Error::RiskNeutralPrincipal);
    }
    let g = optimal_g(mode, p)?;
    let r0 = p.r0();
    Ok(-(-p.r_p() * (p.horizon() * g - r0[0] - r0[1])).exp())
}
