use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::lq::{LqParams, ParetoWeight};
use crate::{Error, Result};

pub type DriftFn = Box<dyn Fn(f64, &DVector<f64>, &DMatrix<f64>) -> DVector<f64> + Send + Sync>;
/// `k^i(t, x, a^{:,i})`: cost of one agent as a function of its own column.
pub type CostFn = Box<dyn Fn(f64, &DVector<f64>, &DVector<f64>) -> f64 + Send + Sync>;
pub type StateFn = Box<dyn Fn(&DVector<f64>) -> f64 + Send + Sync>;
pub type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;
pub type VolatilityFn = Box<dyn Fn(f64, &DVector<f64>) -> DMatrix<f64> + Send + Sync>;

/// Growth and regularity constants of the drift and cost functions.
///
/// `c_p_prime` is the Burkholder–Davis–Gundy constant; it has no closed
/// value and must be supplied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthConstants {
    pub c: f64,
    pub kappa: f64,
    pub l: f64,
    pub m: f64,
    pub m_under: f64,
    pub c_b: f64,
    pub c_k: f64,
    pub c_a: f64,
    pub k_bmo: f64,
    pub c_p_prime: f64,
}

impl GrowthConstants {
    pub fn validate(&self) -> Result<()> {
        let positive = [("c", self.c), ("kappa", self.kappa), ("m", self.m), ("m_under", self.m_under)];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")));
            }
        }
        let nonnegative = [
            ("c_b", self.c_b),
            ("c_k", self.c_k),
            ("c_a", self.c_a),
            ("k_bmo", self.k_bmo),
            ("c_p_prime", self.c_p_prime),
        ];
        for (name, v) in nonnegative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be >= 0, got {v}")));
            }
        }
        if !(self.l.is_finite() && self.l >= 1.0) {
            return Err(Error::InvalidParameter(format!("l must be >= 1, got {}", self.l)));
        }
        Ok(())
    }

    /// Constants valid for the linear-quadratic economy (`l = m = m̄ = 1`).
    /// The BMO constants are left at zero.
    pub fn for_lq(p: &LqParams) -> Self {
        let k_max = p.k().max();
        let k_min = p.k().min();
        Self {
            // |b^i| ≤ √2 ‖a‖ and ‖∇_a b^i‖ = √2, k^i ≤ k_max/2 ‖a‖².
            c: k_max.max(2.0),
            kappa: k_min,
            l: 1.0,
            m: 1.0,
            m_under: 1.0,
            c_b: 0.0,
            c_k: k_max,
            c_a: 2.0 / k_min,
            k_bmo: 0.0,
            c_p_prime: 0.0,
        }
    }

    pub fn with_bmo(mut self, k_bmo: f64, c_p_prime: f64) -> Self {
        self.k_bmo = k_bmo;
        self.c_p_prime = c_p_prime;
        self
    }
}

/// Strictly positive agent weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() || lambdas.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(Error::InvalidParameter(format!("weights must be > 0, got {lambdas:?}")));
        }
        let sum: f64 = lambdas.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("weights must sum to 1, got {sum}")));
        }
        Ok(Self(lambdas))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<ParetoWeight> for WeightVector {
    fn from(w: ParetoWeight) -> Self {
        Self(vec![w.lambda(), w.complement()])
    }
}

/// Per-agent ingredients: effort cost, appetence for the outputs, and the
/// utility of the wage together with its inverse.
pub struct AgentSpec {
    pub cost: CostFn,
    pub appetence: StateFn,
    pub utility: ScalarFn,
    pub utility_inverse: ScalarFn,
}

impl AgentSpec {
    /// A risk-neutral agent (identity utility).
    pub fn risk_neutral(cost: CostFn, appetence: StateFn) -> Self {
        Self {
            cost,
            appetence,
            utility: Box::new(|x| x),
            utility_inverse: Box::new(|y| y),
        }
    }
}

/// A general `N`-agent, `N`-project economy given by callables.
///
/// Actions are `N × N` matrices whose column `i` is agent `i`'s effort
/// across projects.
pub struct GeneralModel {
    n_agents: usize,
    drift: DriftFn,
    agents: Vec<AgentSpec>,
    liquidation: StateFn,
    principal_utility: ScalarFn,
    volatility: VolatilityFn,
    growth: GrowthConstants,
}

impl GeneralModel {
    /// Liquidation defaults to the sum of outputs, the Principal to risk
    /// neutrality and the volatility to the identity.
    pub fn new(n_agents: usize, drift: DriftFn, agents: Vec<AgentSpec>, growth: GrowthConstants) -> Result<Self> {
        if n_agents == 0 {
            return Err(Error::InvalidParameter("need at least one agent".into()));
        }
        if agents.len() != n_agents {
            return Err(Error::InvalidParameter(format!(
                "expected {n_agents} agent specifications, got {}",
                agents.len()
            )));
        }
        growth.validate()?;
        Ok(Self {
            n_agents,
            drift,
            agents,
            liquidation: Box::new(|x| x.sum()),
            principal_utility: Box::new(|x| x),
            volatility: Box::new(move |_, _| DMatrix::identity(n_agents, n_agents)),
            growth,
        })
    }

    pub fn with_liquidation(mut self, f: StateFn) -> Self {
        self.liquidation = f;
        self
    }

    pub fn with_principal_utility(mut self, f: ScalarFn) -> Self {
        self.principal_utility = f;
        self
    }

    pub fn with_volatility(mut self, f: VolatilityFn) -> Self {
        self.volatility = f;
        self
    }

    /// The linear-quadratic economy expressed through callables.
    pub fn linear_quadratic(p: &LqParams) -> Self {
        let k = *p.k();
        let gamma = p.gamma();
        let r_p = p.r_p();
        let drift: DriftFn = Box::new(|_, _, a| DVector::from_vec(vec![a[(0, 0)] - a[(0, 1)], a[(1, 1)] - a[(1, 0)]]));
        let agents = (0..2)
            .map(|i| {
                let sign = if i == 0 { 1.0 } else { -1.0 };
                AgentSpec::risk_neutral(
                    Box::new(move |_, _, col: &DVector<f64>| {
                        0.5 * k[(0, i)] * col[0] * col[0] + 0.5 * k[(1, i)] * col[1] * col[1]
                    }),
                    Box::new(move |x: &DVector<f64>| sign * gamma * (x[0] - x[1])),
                )
            })
            .collect();
        let model = Self::new(2, drift, agents, GrowthConstants::for_lq(p)).expect("valid LQ model");
        if r_p > 0.0 {
            model.with_principal_utility(Box::new(move |x| -(-r_p * x).exp()))
        } else {
            model
        }
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn growth(&self) -> &GrowthConstants {
        &self.growth
    }

    pub fn drift(&self, t: f64, x: &DVector<f64>, a: &DMatrix<f64>) -> DVector<f64> {
        (self.drift)(t, x, a)
    }

    /// Cost of `agent` given the full action matrix.
    pub fn cost(&self, agent: usize, t: f64, x: &DVector<f64>, a: &DMatrix<f64>) -> f64 {
        (self.agents[agent].cost)(t, x, &a.column(agent).into_owned())
    }

    pub fn cost_of_column(&self, agent: usize, t: f64, x: &DVector<f64>, column: &DVector<f64>) -> f64 {
        (self.agents[agent].cost)(t, x, column)
    }

    pub fn appetence(&self, agent: usize, x: &DVector<f64>) -> f64 {
        (self.agents[agent].appetence)(x)
    }

    pub fn agent_utility(&self, agent: usize, wage: f64) -> f64 {
        (self.agents[agent].utility)(wage)
    }

    pub fn agent_utility_inverse(&self, agent: usize, value: f64) -> f64 {
        (self.agents[agent].utility_inverse)(value)
    }

    pub fn liquidation(&self, x: &DVector<f64>) -> f64 {
        (self.liquidation)(x)
    }

    pub fn principal_utility(&self, v: f64) -> f64 {
        (self.principal_utility)(v)
    }

    pub fn volatility(&self, t: f64, x: &DVector<f64>) -> DMatrix<f64> {
        (self.volatility)(t, x)
    }

    /// Checks the structural invariants on `samples` random points of
    /// `[0, 1] × [−radius, radius]^N × [−radius, radius]^{N×N}`: costs are
    /// nonnegative, agent utilities strictly increasing, and volatilities
    /// invertible with condition number below 1e8.
    pub fn validate(&self, samples: usize, radius: f64, seed: u64) -> Result<()> {
        let n = self.n_agents;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let t: f64 = rng.random_range(0.0..=1.0);
            let x = DVector::from_fn(n, |_, _| rng.random_range(-radius..=radius));
            let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-radius..=radius));
            for i in 0..n {
                let k = self.cost(i, t, &x, &a);
                if !(k.is_finite() && k >= 0.0) {
                    return Err(Error::Model(format!("cost of agent {i} is {k} at t = {t}")));
                }
                let w0: f64 = rng.random_range(-radius..radius);
                let w1 = w0 + rng.random_range(1e-3..=radius);
                if !(self.agent_utility(i, w1) > self.agent_utility(i, w0)) {
                    return Err(Error::Model(format!(
                        "utility of agent {i} is not strictly increasing on [{w0}, {w1}]"
                    )));
                }
            }
            let sigma = self.volatility(t, &x);
            if sigma.nrows() != n || sigma.ncols() != n {
                return Err(Error::Model(format!("volatility must be {n}x{n}")));
            }
            let sv = sigma.singular_values();
            let cond = sv.max() / sv.min();
            if !(cond.is_finite() && cond < 1e8) {
                return Err(Error::Model(format!("volatility is ill-conditioned (condition number {cond:e})")));
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for GeneralModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneralModel")
            .field("n_agents", &self.n_agents)
            .field("growth", &self.growth)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::new(vec![0.0, 1.0]).is_err());
        assert_eq!(WeightVector::uniform(4).unwrap().len(), 4);
    }

    #[test]
    fn lq_model_is_valid() {
        let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0).unwrap();
        let gm = GeneralModel::linear_quadratic(&p);
        gm.validate(200, 3.0, 7).unwrap();
    }

    #[test]
    fn invariants_catch_bad_models() {
        let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0).unwrap();
        let growth = GrowthConstants::for_lq(&p);
        let negative_cost = GeneralModel::new(
            1,
            Box::new(|_, _, a| DVector::from_element(1, a[(0, 0)])),
            vec![AgentSpec::risk_neutral(Box::new(|_, _, c| -c[0].abs() - 1.0), Box::new(|_| 0.0))],
            growth,
        )
        .unwrap();
        assert!(matches!(negative_cost.validate(10, 1.0, 1), Err(Error::Model(_))));

        let singular = GeneralModel::new(
            1,
            Box::new(|_, _, a| DVector::from_element(1, a[(0, 0)])),
            vec![AgentSpec::risk_neutral(Box::new(|_, _, c| c[0] * c[0]), Box::new(|_| 0.0))],
            growth,
        )
        .unwrap()
        .with_volatility(Box::new(|_, _| DMatrix::zeros(1, 1)));
        assert!(singular.validate(10, 1.0, 1).is_err());

        let decreasing = GeneralModel::new(
            1,
            Box::new(|_, _, a| DVector::from_element(1, a[(0, 0)])),
            vec![AgentSpec {
                cost: Box::new(|_, _, c| c[0] * c[0]),
                appetence: Box::new(|_| 0.0),
                utility: Box::new(|w| -w),
                utility_inverse: Box::new(|y| -y),
            }],
            growth,
        )
        .unwrap();
        assert!(decreasing.validate(10, 1.0, 1).is_err());
    }

    #[test]
    fn growth_constants_validation() {
        let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0).unwrap();
        let mut g = GrowthConstants::for_lq(&p);
        g.validate().unwrap();
        g.l = 0.5;
        assert!(g.validate().is_err());
    }
}
