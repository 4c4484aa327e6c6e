//! When is the Nash equilibrium itself a Pareto optimum?

use pareto_contracts::lq::{nash_pareto_candidate, nash_pareto_check, LqParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> pareto_contracts::Result<()> {
    let fig1 = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0)?;
    println!(
        "Figure-1 costs, R_P = 1: candidate weight {:.6}, check -> {:?}",
        nash_pareto_candidate(&fig1),
        nash_pareto_check(&fig1, 1e-9)?
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let k = [[rng.random_range(0.5..10.0), rng.random_range(0.5..10.0)], [
            rng.random_range(0.5..10.0),
            rng.random_range(0.5..10.0),
        ]];
        let neutral = LqParams::with_costs(k, 0.0)?;
        let averse = neutral.with_r_p(2.0)?;
        println!(
            "k = {k:.3?}: R_P = 0 -> {:?}, R_P = 2 -> {:?}",
            nash_pareto_check(&neutral, 1e-9)?,
            nash_pareto_check(&averse, 1e-9)?
        );
    }
    Ok(())
}
