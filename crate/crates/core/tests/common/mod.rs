//! Oracles shared by the integration tests. Nothing here calls the solver
//! code under test: objectives are rebuilt from the model primitives and
//! maximised with a derivative-free method.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIG1_K: [[f64; 2]; 2] = [[2.0, 1.0], [10.0, 5.0]];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_k(rng: &mut ChaCha8Rng) -> [[f64; 2]; 2] {
    std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(0.2..10.0)))
}

/// Nelder–Mead minimisation; stops when the simplex spread in `f` and in
/// `x` are both below `tol`.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], step: f64, tol: f64, max_iter: usize) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = (0..=n)
        .map(|i| {
            let mut v = x0.to_vec();
            if i > 0 {
                v[i - 1] += step;
            }
            v
        })
        .collect();
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread_f = values[n] - values[0];
        let spread_x = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread_f <= tol && spread_x <= tol {
            break;
        }

        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> { (0..n).map(|j| centroid[j] + t * (simplex[n][j] - centroid[j])).collect() };

        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < values[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
        } else {
            let (xc, fc) = if fr < values[n] {
                let x = along(-0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = along(0.5);
                let v = f(&x);
                (x, v)
            };
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = (0..n).map(|j| simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j])).collect();
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    (simplex[best].clone(), values[best])
}

/// Maximises `f` from `restarts` random starts in `[lo, hi]^dim`, then
/// polishes the best point with repeated fresh simplices.
pub fn restart_polish_max<F: Fn(&[f64]) -> f64>(f: &F, dim: usize, lo: f64, hi: f64, restarts: usize, seed: u64) -> Vec<f64> {
    let neg = |x: &[f64]| -f(x);
    let mut r = rng(seed);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..restarts {
        let x0: Vec<f64> = (0..dim).map(|_| r.random_range(lo..hi)).collect();
        let (x, v) = nelder_mead(&neg, &x0, 0.25, 1e-13, 20_000);
        if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
            best = Some((x, v));
        }
    }
    let (mut x, _) = best.unwrap();
    let mut step = 1e-2;
    for _ in 0..6 {
        x = nelder_mead(&neg, &x, step, 1e-15, 20_000).0;
        step *= 0.1;
    }
    x
}

fn vertex(slope: f64, curvature: f64) -> f64 {
    // argmax of slope·a − curvature·a²/2
    slope / curvature
}

/// Principal's certainty-equivalent rate for loadings `z` (row = project,
/// column = agent) when efforts are `a`, built from the primitives:
/// expected output minus effort costs minus the risk premium on the
/// unhedged share of each project.
pub fn principal_rate(z: &[f64], a: [[f64; 2]; 2], k: [[f64; 2]; 2], r: f64) -> f64 {
    let b = [a[0][0] - a[0][1], a[1][1] - a[1][0]];
    let costs: f64 = (0..2).flat_map(|j| (0..2).map(move |i| (j, i))).map(|(j, i)| 0.5 * k[j][i] * a[j][i] * a[j][i]).sum();
    let unhedged = [1.0 - z[0] - z[1], 1.0 - z[2] - z[3]];
    b[0] + b[1] - costs - 0.5 * r * (unhedged[0].powi(2) + unhedged[1].powi(2))
}

/// Planner effort for loadings `z = [z11, z12, z21, z22]` and weight `lambda`.
pub fn planner_effort(z: &[f64], lambda: f64, k: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let w = [lambda, 1.0 - lambda];
    let agg = [w[0] * z[0] + w[1] * z[1], w[0] * z[2] + w[1] * z[3]];
    std::array::from_fn(|j| {
        std::array::from_fn(|i| {
            let sign = if i == j { 1.0 } else { -1.0 };
            vertex(sign * agg[j], w[i] * k[j][i])
        })
    })
}

/// Each agent's own best response to its loading column.
pub fn nash_effort(z: &[f64], k: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let zz = [[z[0], z[1]], [z[2], z[3]]];
    std::array::from_fn(|j| {
        std::array::from_fn(|i| {
            let sign = if i == j { 1.0 } else { -1.0 };
            vertex(sign * zz[j][i], k[j][i])
        })
    })
}

pub fn g_planner_oracle(z: &[f64], lambda: f64, k: [[f64; 2]; 2], r: f64) -> f64 {
    principal_rate(z, planner_effort(z, lambda, k), k, r)
}

pub fn g_nash_oracle(z: &[f64], k: [[f64; 2]; 2], r: f64) -> f64 {
    principal_rate(z, nash_effort(z, k), k, r)
}

/// Geometric grid of `n` points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}
