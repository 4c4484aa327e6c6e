//! Closed-form optimal contracts for the Planner, the cooperative Planner
//! and the Nash benchmark on the two-project economy.

use pareto_contracts::lq::{solve, LqParams, Mode, ParetoWeight};

fn main() -> pareto_contracts::Result<()> {
    // Row j holds the cost coefficients of agents 1 and 2 on project j.
    let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0)?;

    let modes = [
        ("pareto 1/3", Mode::Pareto(ParetoWeight::new(1.0 / 3.0)?)),
        ("cooperative", Mode::Cooperative),
        ("nash", Mode::Nash),
    ];
    for (label, mode) in modes {
        let r = solve(mode, &p)?;
        println!("{label}");
        println!("  z*  = {:?}", r.z_star.rows());
        println!("  a*  = {:?}", r.a_star.rows());
        println!("  g*  = {:.6}   U_0^P = {:.6}", r.g_value, r.principal_value.unwrap_or(f64::NAN));
        for (i, c) in r.contracts.iter().enumerate() {
            println!("  agent {}: xi = {:+.6} + {:?} . X_T", i + 1, c.intercept, c.loading);
        }
    }
    Ok(())
}
