//! Brute-force Pareto and Nash certificates on a grid of constant efforts.

use pareto_contracts::lq::{contracts_nash, contracts_pareto, solve, ActionMatrix, LqParams, Mode, ParetoWeight};
use pareto_contracts::mc::{certify_nash, certify_pareto};

fn main() -> pareto_contracts::Result<()> {
    let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0)?;
    let res = 0.05;

    let w = ParetoWeight::new(1.0 / 3.0)?;
    let contracts = contracts_pareto(w, &p)?;
    let a = solve(Mode::Pareto(w), &p)?.a_star;
    let cert = certify_pareto(&a, &contracts, &p, res)?;
    println!("Planner optimum, lambda = 1/3: passed = {} ({} points)", cert.passed, cert.points_scanned);

    let lazy = certify_pareto(&ActionMatrix::zero(), &contracts, &p, res)?;
    println!("zero effort under the same contracts: passed = {}, dominated by {:?}", lazy.passed, lazy.witness);

    let nash = solve(Mode::Nash, &p)?;
    let cert = certify_nash(&nash.a_star, &contracts_nash(&p), &p, res)?;
    println!("Nash equilibrium: passed = {}", cert.passed);

    let coop = solve(Mode::Cooperative, &p)?;
    let cert = certify_nash(&coop.a_star, &coop.contracts, &p, res)?;
    println!(
        "cooperative effort as a Nash equilibrium: passed = {}, agent {:?} deviates to {:?}",
        cert.passed,
        cert.deviating_agent.map(|i| i + 1),
        cert.witness
    );
    Ok(())
}
