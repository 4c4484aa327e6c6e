//! Simulates the output under the cooperative and Nash optima and compares
//! Monte Carlo utilities with their closed forms.

use pareto_contracts::bsde::TimeGrid;
use pareto_contracts::lq::{principal_value_analytic, solve, LqParams, Mode};
use pareto_contracts::mc::{mc_agent_utility, mc_principal_utility, simulate_paths};

fn main() -> pareto_contracts::Result<()> {
    let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0)?;
    let grid = TimeGrid::new(p.horizon(), 100)?;
    for mode in [Mode::Cooperative, Mode::Nash] {
        let opt = solve(mode, &p)?;
        let ens = simulate_paths(opt.a_star, &p, grid, 100_000, 42)?;
        let pu = mc_principal_utility(&ens, &opt.contracts, &p)?;
        let exact = principal_value_analytic(mode, &p)?;
        println!("{mode:?}: U_0^P ~ {:.6} +/- {:.2e} (exact {exact:.6})", pu.mean, pu.std_error);
        for agent in 0..2 {
            let u = mc_agent_utility(&ens, &opt.contracts[agent], agent, &opt.a_star, &p)?;
            println!("  agent {}: {:+.5} +/- {:.1e}", agent + 1, u.mean, u.std_error);
        }
    }
    Ok(())
}
