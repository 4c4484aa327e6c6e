//! The generic layer on a non-quadratic economy: quartic effort costs and a
//! drift with cross effects, solved by search rather than closed forms.

use nalgebra::{DMatrix, DVector};
use pareto_contracts::moop::{
    hamiltonian_argmax, nash_driver, nash_fixed_point, planner_driver, AgentSpec, GeneralModel, GrowthConstants,
    SearchOptions, WeightVector,
};

fn rows(m: &DMatrix<f64>) -> String {
    m.row_iter()
        .map(|r| r.iter().map(|v| format!("{v:+.6}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn main() -> pareto_contracts::Result<()> {
    let growth = GrowthConstants {
        c: 4.0,
        kappa: 0.5,
        l: 1.0,
        m: 3.0,
        m_under: 3.0,
        c_b: 1.0,
        c_k: 1.0,
        c_a: 1.0,
        k_bmo: 0.0,
        c_p_prime: 1.0,
    };
    let drift = Box::new(|_: f64, _: &DVector<f64>, a: &DMatrix<f64>| {
        DVector::from_vec(vec![a[(0, 0)] + 0.3 * a[(0, 1)], a[(1, 1)] + 0.3 * a[(1, 0)]])
    });
    let agents = (0..2)
        .map(|_| {
            AgentSpec::risk_neutral(
                Box::new(|_, _, col: &DVector<f64>| 0.25 * col.iter().map(|v| v.powi(4)).sum::<f64>() + 0.5 * col.norm_squared()),
                Box::new(|_| 0.0),
            )
        })
        .collect();
    let gm = GeneralModel::new(2, drift, agents, growth)?;
    gm.validate(500, 3.0, 1)?;

    let x = DVector::zeros(2);
    let opts = SearchOptions::default();
    let w = WeightVector::new(vec![0.4, 0.6])?;
    let z_lambda = DVector::from_vec(vec![1.0, 0.5]);
    let h = hamiltonian_argmax(0.0, &x, &z_lambda, &w, &gm, &opts)?;
    println!("Planner effort: {}", rows(&h.action));
    println!("Planner driver: {:.6}", planner_driver(0.0, &x, &z_lambda, &w, &gm, &opts)?);

    let z = DMatrix::from_row_slice(2, 2, &[0.7, 0.3, 0.4, 0.6]);
    let eq = nash_fixed_point(0.0, &x, &z, &gm, None, 50, 1e-9, &opts)?;
    println!("Nash effort after {} sweep(s): {}", eq.iterations, rows(&eq.action));
    let f = nash_driver(0.0, &x, &z, &gm, 50, 1e-9, &opts)?;
    println!("Nash drivers: {:+.6} {:+.6}", f[0], f[1]);
    Ok(())
}
