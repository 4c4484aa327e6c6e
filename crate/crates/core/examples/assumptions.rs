//! Exponent condition, sampled growth bounds, the gradient constant and the
//! BMO inequality for the linear-quadratic economy.

use pareto_contracts::lq::LqParams;
use pareto_contracts::moop::{
    check_bmo_condition, check_growth_conditions, condition_a1, lemma_b1_constant, GeneralModel, GrowthConstants,
    SamplingDomain,
};

fn main() -> pareto_contracts::Result<()> {
    let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0)?;
    let gc = GrowthConstants::for_lq(&p).with_bmo(5e-4, 2.0);
    println!("{:?}", condition_a1(&gc)?);

    let report = check_growth_conditions(&gc, &GeneralModel::linear_quadratic(&p), &SamplingDomain::default())?;
    println!("sampled bounds hold: {}", report.all_hold());
    println!("  drift   worst margin {:.4}", report.drift_bound.worst_margin);
    println!("  cost    worst margin {:.4}", report.cost_upper.worst_margin);
    println!("  coercive worst margin {:.4}", report.cost_coercive.worst_margin);

    let c_f = lemma_b1_constant(&gc, 2)?;
    println!("C_f = {c_f}, K C_f C_p' = {:.4} -> BMO holds: {}", gc.k_bmo * c_f * gc.c_p_prime, check_bmo_condition(&gc, c_f));

    let mut steep = gc;
    steep.m = 3.0;
    println!("m = 3: {:?}, C_f -> {:?}", condition_a1(&steep)?, lemma_b1_constant(&steep, 2));
    Ok(())
}
