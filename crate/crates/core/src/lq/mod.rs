//! The two-agent linear-quadratic economy in closed form.
//!
//! Output follows `dX_t = b(a_t) dt + dW_t` with `b(a) = (a11 − a12, a22 − a21)`
//! and quadratic effort costs. Agents are risk neutral with linear appetence
//! `Γ_1 = γ(1, −1)`, `Γ_2 = γ(−1, 1)`; the Principal has CARA utility with
//! risk aversion `R_P` over `X_T^1 + X_T^2 − ξ^1 − ξ^2`.

mod closed_form;
mod comparison;
mod contracts;
mod types;

pub use closed_form::{
    a_star, cost, drift, g_cooperative, g_na, g_na_limit, g_pareto_curve, g_planner, nash_effort,
    weak_pareto_values, z_cooperative, z_nash, z_pareto,
};
pub use comparison::{
    figure1_data, lambda_improvement_set, nash_pareto_candidate, nash_pareto_check,
    nash_pareto_residuals, Figure1Table, FigureRow, Interval, LambdaSet, Series,
};
pub use contracts::{
    agent_utility_analytic, contracts_cooperative, contracts_nash, contracts_pareto, optimal_g,
    principal_value_analytic, saturating_contracts,
};
pub use types::{
    ActionMatrix, LinearContract, LqParams, Mode, ParetoWeight, SensitivityMatrix, SolveReport,
};

use crate::Result;

/// Closed-form optimum of `mode`: loadings, efforts, the Principal's
/// reduced objective and value, and the two contracts.
///
/// `Mode::Pareto` with weight 1/2 is rejected; the cooperative mode covers it.
pub fn solve(mode: Mode, p: &LqParams) -> Result<SolveReport> {
    let (z_star, a_star) = match mode {
        Mode::Pareto(w) => {
            let z = z_pareto(w, p)?;
            (z, closed_form::a_star(&z, w, p))
        }
        Mode::Cooperative => {
            let z = z_cooperative(p, None)?;
            (z, closed_form::a_star(&z, ParetoWeight::cooperative(), p))
        }
        Mode::Nash => {
            let z = z_nash(p);
            (z, nash_effort(&z, p))
        }
    };
    let principal_value = if p.r_p() > 0.0 {
        Some(principal_value_analytic(mode, p)?)
    } else {
        None
    };
    Ok(SolveReport {
        mode,
        z_star,
        a_star,
        g_value: optimal_g(mode, p)?,
        principal_value,
        contracts: saturating_contracts(&z_star, &a_star, p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn solve_modes() {
        let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0).unwrap();
        let coop = solve(Mode::Cooperative, &p).unwrap();
        assert!((coop.g_value - 0.9).abs() < 1e-12);
        assert!((coop.principal_value.unwrap() + 0.40657).abs() < 1e-5);
        let nash = solve(Mode::Nash, &p).unwrap();
        assert!((nash.g_value - 0.74375).abs() < 1e-12);
        assert_eq!(
            solve(Mode::Pareto(ParetoWeight::cooperative()), &p),
            Err(Error::DegenerateWeight)
        );
        let neutral = solve(Mode::Nash, &p.with_r_p(0.0).unwrap()).unwrap();
        assert_eq!(neutral.principal_value, None);
    }
}
