//! Generic scalarised multi-objective layer for `N` agents described by
//! callables: pointwise Hamiltonian maximisation, the Planner and Nash
//! drivers, and checks of the growth and BMO assumptions.

mod assumptions;
mod hamiltonian;
mod model;
mod nash;
mod search;

pub use assumptions::{
    check_bmo_condition, check_growth_conditions, condition_a1, lemma_b1_constant, BoundCheck, ConditionA1,
    GrowthReport, SamplingDomain,
};
pub use hamiltonian::{hamiltonian_argmax, planner_driver, weighted_hamiltonian, HamiltonianMax};
pub use model::{
    AgentSpec, CostFn, DriftFn, GeneralModel, GrowthConstants, ScalarFn, StateFn, VolatilityFn, WeightVector,
};
pub use nash::{agent_objective, nash_driver, nash_fixed_point, NashSolution};
pub use search::SearchOptions;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lq::{a_star, nash_effort, z_nash, z_pareto, LqParams, ParetoWeight};
    use nalgebra::{DMatrix, DVector};

    fn fig1() -> LqParams {
        LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0).unwrap()
    }

    #[test]
    fn zero_sensitivity_gives_zero_effort() {
        let gm = GeneralModel::linear_quadratic(&fig1());
        let w = WeightVector::uniform(2).unwrap();
        let h = hamiltonian_argmax(0.0, &DVector::zeros(2), &DVector::zeros(2), &w, &gm, &SearchOptions::default())
            .unwrap();
        assert_eq!(h.action, DMatrix::zeros(2, 2));
        assert_eq!(h.value, 0.0);
    }

    #[test]
    fn argmax_matches_closed_form() {
        let p = fig1();
        let gm = GeneralModel::linear_quadratic(&p);
        let lw = ParetoWeight::new(1.0 / 3.0).unwrap();
        let z = z_pareto(lw, &p).unwrap();
        let zl = DVector::from_vec(vec![z.aggregate(0, lw), z.aggregate(1, lw)]);
        let h = hamiltonian_argmax(0.0, &DVector::zeros(2), &zl, &lw.into(), &gm, &SearchOptions::default()).unwrap();
        let expected = a_star(&z, lw, &p);
        for j in 0..2 {
            for i in 0..2 {
                assert!((h.action[(j, i)] - expected.get(j, i)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn nash_converges_in_one_sweep_and_is_idempotent() {
        let p = fig1();
        let gm = GeneralModel::linear_quadratic(&p);
        let z = z_nash(&p);
        let zm = DMatrix::from_fn(2, 2, |j, i| z.get(j, i));
        let x = DVector::zeros(2);
        let opts = SearchOptions::default();
        let sol = nash_fixed_point(0.0, &x, &zm, &gm, None, 10, 1e-9, &opts).unwrap();
        assert_eq!(sol.iterations, 1);
        let e = nash_effort(&z, &p);
        for j in 0..2 {
            for i in 0..2 {
                assert!((sol.action[(j, i)] - e.get(j, i)).abs() < 1e-7);
            }
        }
        let again = nash_fixed_point(0.0, &x, &zm, &gm, Some(&sol.action), 10, 1e-9, &opts).unwrap();
        assert_eq!(again.iterations, 0);
        assert_eq!(again.action, sol.action);
    }

    #[test]
    fn nash_non_convergence_is_explicit() {
        // Matching pennies on the box corners: best responses cycle.
        let growth = GrowthConstants::for_lq(&fig1());
        let drift: DriftFn = Box::new(|_, _, a| {
            DVector::from_vec(vec![a[(0, 0)] * (a[(0, 1)] + 0.5), (a[(0, 0)] + 0.5) * a[(0, 1)]])
        });
        let agents = (0..2)
            .map(|_| AgentSpec::risk_neutral(Box::new(|_, _, c| 1e-3 * c.norm_squared()), Box::new(|_| 0.0)))
            .collect();
        let gm = GeneralModel::new(2, drift, agents, growth).unwrap();
        let z = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let r = nash_fixed_point(0.0, &DVector::zeros(2), &z, &gm, None, 3, 1e-12, &SearchOptions::default());
        assert!(matches!(r, Err(crate::Error::NoConvergence { .. })), "{r:?}");
    }
}
