//! Weights for which imposing a Planner beats the Nash benchmark, across
//! risk aversions of the Principal.

use pareto_contracts::lq::{g_cooperative, lambda_improvement_set, weak_pareto_values, LqParams};

fn main() -> pareto_contracts::Result<()> {
    let base = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0)?;
    let (g0, g1) = weak_pareto_values(&base);
    println!("g(0) = {g0}, g(1/2) = {}, g(1) = {g1}", g_cooperative(&base));
    println!("{:>8} {:>12} {:>28}", "R_P", "g_NA", "Lambda");
    for r in [1e-3, 0.1, 0.25, 0.5, 1.0, 50.0, 1e3] {
        let set = lambda_improvement_set(&base.with_r_p(r)?, 1e-10)?;
        let iv = &set.intervals[0];
        println!("{r:>8} {:>12.8} {:>28}", set.g_na_value, format!("({:.8}, {:.8})", iv.lower, iv.upper));
    }
    Ok(())
}
