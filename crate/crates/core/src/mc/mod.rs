//! Monte Carlo simulation of the controlled output, utility estimators, and
//! brute-force Pareto and Nash certificates.
//!
//! Every random quantity is a pure function of the seed: path `i` draws
//! from its own stream, and reductions run serially in path order.

mod certify;
mod estimate;
mod paths;
mod rng;

pub use certify::{action_grid, certify_nash, certify_pareto, Certificate, IMPROVEMENT_TOL};
pub use estimate::{estimate, mc_agent_utility, mc_principal_utility, McEstimate};
pub use paths::{simulate_paths, FeedbackFn, PathEnsemble, Policy, SimulatedPath};
pub use rng::{gaussian_pair, PathNoise};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsde::TimeGrid;
    use crate::lq::{contracts_cooperative, solve, ActionMatrix, LinearContract, LqParams, Mode};
    use crate::Error;

    fn fig1() -> LqParams {
        LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0).unwrap()
    }

    #[test]
    fn same_seed_same_bits() {
        let grid = TimeGrid::new(1.0, 20).unwrap();
        let a = ActionMatrix::new([[0.5, -1.0], [-0.1, 0.2]]).unwrap();
        let e1 = simulate_paths(a, &fig1(), grid, 500, 9).unwrap();
        let e2 = simulate_paths(a, &fig1(), grid, 500, 9).unwrap();
        assert_eq!(e1.terminal(), e2.terminal());
        let e3 = simulate_paths(a, &fig1(), grid, 500, 10).unwrap();
        assert_ne!(e1.terminal(), e3.terminal());
    }

    #[test]
    fn regenerated_path_matches_terminal_and_recursion() {
        let grid = TimeGrid::new(1.0, 16).unwrap();
        let a = ActionMatrix::new([[0.5, -1.0], [-0.1, 0.2]]).unwrap();
        let ens = simulate_paths(a, &fig1(), grid, 8, 3).unwrap();
        let path = ens.path(5).unwrap();
        assert_eq!(*path.states.last().unwrap(), ens.terminal()[5]);
        let dt = grid.dt();
        for k in 0..16 {
            let x = path.states[k];
            let dw = path.increments[k];
            assert_eq!(path.states[k + 1], [x[0] + 1.5 * dt + dw[0], x[1] + 0.30000000000000004 * dt + dw[1]]);
        }
        assert!(ens.path(8).is_err());
    }

    #[test]
    fn policy_mismatch_and_risk_neutral_principal_are_rejected() {
        let grid = TimeGrid::new(1.0, 4).unwrap();
        let p = fig1();
        let ens = simulate_paths(ActionMatrix::zero(), &p, grid, 10, 1).unwrap();
        let other = ActionMatrix::new([[0.1, 0.0], [0.0, 0.0]]).unwrap();
        assert_eq!(mc_agent_utility(&ens, &LinearContract::zero(), 0, &other, &p), Err(Error::PolicyMismatch));
        let zero = mc_agent_utility(&ens, &LinearContract::zero(), 0, &ActionMatrix::zero(), &p).unwrap();
        assert_eq!((zero.mean, zero.std_error), (0.0, 0.0));
        let rn = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 0.0).unwrap();
        let ens = simulate_paths(ActionMatrix::zero(), &rn, grid, 10, 1).unwrap();
        assert_eq!(mc_principal_utility(&ens, &[LinearContract::zero(); 2], &rn), Err(Error::RiskNeutralPrincipal));
    }

    #[test]
    fn cooperative_optimum_saturates_agents() {
        let p = fig1();
        let report = solve(Mode::Cooperative, &p).unwrap();
        let ens = simulate_paths(report.a_star, &p, TimeGrid::new(1.0, 10).unwrap(), 20_000, 42).unwrap();
        let c = contracts_cooperative(&p, None).unwrap();
        for agent in 0..2 {
            let est = mc_agent_utility(&ens, &c[agent], agent, &report.a_star, &p).unwrap();
            assert!(est.within(0.0, 4.0), "{est:?}");
        }
        // Loadings summing to one per project make the Principal's payoff deterministic.
        let pu = mc_principal_utility(&ens, &c, &p).unwrap();
        assert!(pu.std_error < 1e-12);
        assert!(pu.within(-(-0.9f64).exp(), 3.0));
    }

    #[test]
    fn estimate_of_constant_samples() {
        let e = estimate(&[2.5; 7]);
        assert_eq!((e.mean, e.std_error, e.n_paths), (2.5, 0.0, 7));
        let e = estimate(&[1.0, 3.0]);
        assert_eq!((e.mean, e.std_error), (2.0, 1.0));
    }
}
