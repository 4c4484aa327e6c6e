mod common;

use common::*;
use nalgebra::{DMatrix, DVector};
use pareto_contracts::lq::{g_planner, z_nash, z_pareto, LqParams, ParetoWeight};
use pareto_contracts::moop::*;
use proptest::prelude::*;
use rand::Rng;

fn lq(k: [[f64; 2]; 2]) -> (LqParams, GeneralModel) {
    let p = LqParams::with_costs(k, 1.0).unwrap();
    let gm = GeneralModel::linear_quadratic(&p);
    (p, gm)
}

/// Coordinate ascent only; the LQ Hamiltonian is concave so the joint
/// grid adds nothing but time.
fn fast() -> SearchOptions {
    SearchOptions { joint_budget: 0, ..SearchOptions::default() }
}

fn origin() -> DVector<f64> {
    DVector::zeros(2)
}

fn to_matrix(a: [[f64; 2]; 2]) -> DMatrix<f64> {
    DMatrix::from_fn(2, 2, |j, i| a[j][i])
}

fn aggregates(z: &[f64], lambda: f64) -> DVector<f64> {
    DVector::from_vec(vec![lambda * z[0] + (1.0 - lambda) * z[1], lambda * z[2] + (1.0 - lambda) * z[3]])
}

#[test]
fn argmax_matches_planner_effort_on_random_lq_models() {
    let mut r = rng(21);
    for case in 0..100 {
        let k: [[f64; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| r.random_range(1.0..10.0)));
        let lambda = r.random_range(0.25..0.75);
        let z: Vec<f64> = (0..4).map(|_| r.random_range(-0.7..0.7)).collect();
        let (_, gm) = lq(k);
        let w = WeightVector::new(vec![lambda, 1.0 - lambda]).unwrap();
        let opts = if case < 5 { SearchOptions::default() } else { fast() };
        let h = hamiltonian_argmax(0.0, &origin(), &aggregates(&z, lambda), &w, &gm, &opts).unwrap();
        let expected = planner_effort(&z, lambda, k);
        for j in 0..2 {
            for i in 0..2 {
                assert!(
                    (h.action[(j, i)] - expected[j][i]).abs() < 1e-6,
                    "case {case}: {} vs {}",
                    h.action[(j, i)],
                    expected[j][i]
                );
            }
        }
    }
}

#[test]
fn argmax_beats_random_probes() {
    let (p, gm) = lq(FIG1_K);
    let lw = ParetoWeight::new(1.0 / 3.0).unwrap();
    let z = z_pareto(lw, &p).unwrap();
    let zl = DVector::from_vec(vec![z.aggregate(0, lw), z.aggregate(1, lw)]);
    let w: WeightVector = lw.into();
    let h = hamiltonian_argmax(0.0, &origin(), &zl, &w, &gm, &SearchOptions::default()).unwrap();
    let mut r = rng(3);
    for _ in 0..10_000 {
        let a = DMatrix::from_fn(2, 2, |_, _| r.random_range(-3.0..3.0));
        assert!(weighted_hamiltonian(0.0, &origin(), &zl, &w, &gm, &a) <= h.value);
    }
}

#[test]
fn planner_driver_at_the_one_third_optimum() {
    let (p, gm) = lq(FIG1_K);
    let lw = ParetoWeight::new(1.0 / 3.0).unwrap();
    let z = z_pareto(lw, &p).unwrap();
    let zl = DVector::from_vec(vec![z.aggregate(0, lw), z.aggregate(1, lw)]);
    let f = planner_driver(0.0, &origin(), &zl, &lw.into(), &gm, &SearchOptions::default()).unwrap();
    // Maximised Hamiltonian: Σ_j Σ_i z_λ,j² / (2 λ_i k^{ji}).
    let w = [1.0 / 3.0, 2.0 / 3.0];
    let expected: f64 = (0..2)
        .flat_map(|j| (0..2).map(move |i| (j, i)))
        .map(|(j, i)| zl[j] * zl[j] / (2.0 * w[i] * FIG1_K[j][i]))
        .sum();
    assert!((f - expected).abs() < 1e-10, "{f} vs {expected}");
    assert!((f - 16.0 / 45.0).abs() < 1e-10);
    // The Principal's rate at the same loadings is the value on the curve.
    assert!((g_planner(lw, &z, &p) - 0.8).abs() < 1e-12);
}

#[test]
fn planner_driver_is_convex_in_the_aggregate() {
    let (_, gm) = lq(FIG1_K);
    let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
    let f = |z: &DVector<f64>| planner_driver(0.0, &origin(), z, &w, &gm, &fast()).unwrap();
    let mut r = rng(8);
    for _ in 0..100 {
        let z1 = DVector::from_fn(2, |_, _| r.random_range(-1.0..1.0));
        let z2 = DVector::from_fn(2, |_, _| r.random_range(-1.0..1.0));
        let mid = (&z1 + &z2) * 0.5;
        assert!(f(&mid) <= 0.5 * (f(&z1) + f(&z2)) + 1e-10);
    }
}

#[test]
fn planner_driver_grows_quadratically() {
    let (_, gm) = lq(FIG1_K);
    let w = WeightVector::uniform(2).unwrap();
    let z = DVector::from_vec(vec![0.01, -0.006]);
    let base = planner_driver(0.0, &origin(), &z, &w, &gm, &fast()).unwrap();
    assert!(base > 0.0);
    for c in [1.0, 10.0, 100.0] {
        let fc = planner_driver(0.0, &origin(), &(&z * c), &w, &gm, &fast()).unwrap();
        let exponent = (fc / base).ln() / f64::ln(c);
        if c > 1.0 {
            assert!((exponent - 2.0).abs() < 1e-6, "c = {c}: exponent {exponent}");
        }
        assert!(fc <= base * c * c * (1.0 + 1e-8));
    }
}

#[test]
fn zero_loadings_give_zero_effort_and_drivers() {
    let (_, gm) = lq(FIG1_K);
    let w = WeightVector::uniform(2).unwrap();
    assert_eq!(planner_driver(0.0, &origin(), &DVector::zeros(2), &w, &gm, &SearchOptions::default()).unwrap(), 0.0);
    let z = DMatrix::zeros(2, 2);
    let eq = nash_fixed_point(0.0, &origin(), &z, &gm, None, 10, 1e-10, &fast()).unwrap();
    assert_eq!(eq.action, DMatrix::zeros(2, 2));
    assert_eq!(nash_driver(0.0, &origin(), &z, &gm, 10, 1e-10, &fast()).unwrap(), DVector::zeros(2));
}

#[test]
fn nash_matches_own_best_responses_and_resists_deviations() {
    let (p, gm) = lq(FIG1_K);
    let zn = z_nash(&p);
    let zflat = [zn.get(0, 0), zn.get(0, 1), zn.get(1, 0), zn.get(1, 1)];
    let z = to_matrix(zn.rows());
    let eq = nash_fixed_point(0.0, &origin(), &z, &gm, None, 20, 1e-10, &SearchOptions::default()).unwrap();
    assert_eq!(eq.iterations, 1);
    let expected = to_matrix(nash_effort(&zflat, FIG1_K));
    assert!((&eq.action - &expected).abs().max() < 1e-7);

    let mut r = rng(12);
    for _ in 0..10_000 {
        let agent = r.random_range(0..2);
        let mut dev = eq.action.clone();
        for j in 0..2 {
            dev[(j, agent)] = r.random_range(-3.0..3.0);
        }
        let before = agent_objective(0.0, &origin(), &z, &gm, agent, &eq.action);
        let after = agent_objective(0.0, &origin(), &z, &gm, agent, &dev);
        assert!(after <= before + 1e-10);
    }
}

#[test]
fn nash_driver_sum_at_the_nash_loadings() {
    let (p, gm) = lq(FIG1_K);
    let zn = z_nash(&p);
    let z = to_matrix(zn.rows());
    let f = nash_driver(0.0, &origin(), &z, &gm, 20, 1e-12, &SearchOptions::default()).unwrap();
    let sum = f.sum();

    // Independent decomposition: Σ_i f_i = b(e★)·(row sums) − Σ k(e★).
    let zflat = [zn.get(0, 0), zn.get(0, 1), zn.get(1, 0), zn.get(1, 1)];
    let e = nash_effort(&zflat, FIG1_K);
    let b = [e[0][0] - e[0][1], e[1][1] - e[1][0]];
    let costs: f64 = (0..2).flat_map(|j| (0..2).map(move |i| 0.5 * FIG1_K[j][i] * e[j][i] * e[j][i])).sum();
    let identity = b[0] * (zflat[0] + zflat[1]) + b[1] * (zflat[2] + zflat[3]) - costs;
    // Other agents' efforts enter each driver linearly through b, so the
    // ~1e-8 search error in the actions shows up at first order.
    assert!((sum - identity).abs() < 1e-7, "{sum} vs {identity}");
    assert!((identity - 2657.0 / 2560.0).abs() < 1e-12, "{identity}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn lq_growth_conditions_never_fail(k in prop::array::uniform2(prop::array::uniform2(0.05f64..50.0))) {
        let (p, gm) = lq(k);
        let domain = SamplingDomain { samples: 200, ..SamplingDomain::default() };
        let report = check_growth_conditions(&GrowthConstants::for_lq(&p), &gm, &domain).unwrap();
        prop_assert!(report.all_hold(), "{:?}", report);
    }
}
