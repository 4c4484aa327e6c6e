//! Contract value processes along simulated paths, and backward Euler on a
//! linear driver.

use pareto_contracts::bsde::{backward_euler_solve, forward_value_process, lq_contract_payment, lq_value_process_spec, TimeGrid};
use pareto_contracts::lq::{contracts_cooperative, solve, LqParams, Mode};
use pareto_contracts::mc::simulate_paths;

fn main() -> pareto_contracts::Result<()> {
    let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0)?.with_gamma(0.2)?.with_reservation([0.1, 0.0])?;
    let grid = TimeGrid::new(1.0, 50)?;
    let opt = solve(Mode::Cooperative, &p)?;
    let contracts = contracts_cooperative(&p, None)?;
    let ens = simulate_paths(opt.a_star, &p, grid, 5, 11)?;

    for agent in 0..2 {
        let spec = lq_value_process_spec(Mode::Cooperative, agent, p.r0()[agent], &p)?;
        for i in 0..ens.n_paths() {
            let path = ens.path(i)?;
            let y = forward_value_process(&spec, &grid, &path.states, &path.increments)?;
            let x_t = ens.terminal()[i];
            println!(
                "agent {} path {i}: Y_T - Gamma(X_T) = {:+.12}, contract pays {:+.12}",
                agent + 1,
                lq_contract_payment(agent, *y.last().unwrap(), x_t, &p),
                contracts[agent].payout(x_t)
            );
        }
    }

    let alpha: f64 = 0.8;
    let exact = alpha.exp();
    for n in [10, 20, 40, 80] {
        let sol = backward_euler_solve(|_| 1.0, |_, y, _| alpha * y, &TimeGrid::new(1.0, n)?, &[[0.0]])?;
        println!("n = {n:>3}: y0 = {:.8}, error = {:.3e}", sol.y0, (sol.y0 - exact).abs());
    }
    Ok(())
}
