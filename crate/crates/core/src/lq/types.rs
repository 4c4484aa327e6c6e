use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The two-agent linear-quadratic economy.
///
/// Cost coefficients are stored row-major as `[[k11, k12], [k21, k22]]`:
/// `k[(j, i)]` is the cost of agent `i`'s effort on project `j`. Agent `i`
/// owns project `i`. The output volatility is the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LqParams {
    k: Matrix2<f64>,
    r_p: f64,
    gamma: f64,
    horizon: f64,
    r0: Vector2<f64>,
    a_max: f64,
}

impl LqParams {
    pub fn new(
        k: [[f64; 2]; 2],
        r_p: f64,
        gamma: f64,
        horizon: f64,
        r0: [f64; 2],
        a_max: f64,
    ) -> Result<Self> {
        let params = Self {
            k: Matrix2::new(k[0][0], k[0][1], k[1][0], k[1][1]),
            r_p,
            gamma,
            horizon,
            r0: Vector2::new(r0[0], r0[1]),
            a_max,
        };
        params.validate()?;
        Ok(params)
    }

    /// Costs `k` and risk aversion `r_p` with the default horizon 1, no
    /// appetence, zero reservation utilities and an action box of ±3.
    pub fn with_costs(k: [[f64; 2]; 2], r_p: f64) -> Result<Self> {
        Self::new(k, r_p, 0.0, 1.0, [0.0, 0.0], 3.0)
    }

    fn validate(&self) -> Result<()> {
        if !self.k.iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "all cost coefficients must be finite and > 0, got {:?}",
                self.rows()
            )));
        }
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "horizon must be > 0, got {}",
                self.horizon
            )));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be >= 0, got {}",
                self.gamma
            )));
        }
        if !(self.r_p.is_finite() && self.r_p >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "r_p must be >= 0, got {}",
                self.r_p
            )));
        }
        if !(self.a_max.is_finite() && self.a_max > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "a_max must be > 0, got {}",
                self.a_max
            )));
        }
        if !self.r0.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("reservation utilities must be finite".into()));
        }
        Ok(())
    }

    pub fn with_r_p(mut self, r_p: f64) -> Result<Self> {
        self.r_p = r_p;
        self.validate().map(|_| self)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        self.gamma = gamma;
        self.validate().map(|_| self)
    }

    pub fn with_horizon(mut self, horizon: f64) -> Result<Self> {
        self.horizon = horizon;
        self.validate().map(|_| self)
    }

    pub fn with_reservation(mut self, r0: [f64; 2]) -> Result<Self> {
        self.r0 = Vector2::new(r0[0], r0[1]);
        self.validate().map(|_| self)
    }

    pub fn with_a_max(mut self, a_max: f64) -> Result<Self> {
        self.a_max = a_max;
        self.validate().map(|_| self)
    }

    /// Cost coefficient of `agent`'s effort on `project` (zero-based).
    #[inline]
    pub fn cost_coeff(&self, project: usize, agent: usize) -> f64 {
        self.k[(project, agent)]
    }

    pub fn k(&self) -> &Matrix2<f64> {
        &self.k
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.k[(0, 0)], self.k[(0, 1)]], [self.k[(1, 0)], self.k[(1, 1)]]]
    }

    pub fn r_p(&self) -> f64 {
        self.r_p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn r0(&self) -> [f64; 2] {
        [self.r0[0], self.r0[1]]
    }

    pub fn a_max(&self) -> f64 {
        self.a_max
    }

    /// Linear appetence vector of `agent`: `γ(1, −1)` for agent 0 and
    /// `γ(−1, 1)` for agent 1.
    pub fn appetence(&self, agent: usize) -> [f64; 2] {
        if agent == 0 {
            [self.gamma, -self.gamma]
        } else {
            [-self.gamma, self.gamma]
        }
    }
}

/// Planner weight `λ` on agent 1; agent 2 gets `1 − λ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ParetoWeight(f64);

impl ParetoWeight {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_finite() && lambda > 0.0 && lambda < 1.0 {
            Ok(Self(lambda))
        } else {
            Err(Error::InvalidParameter(format!(
                "Pareto weight must lie strictly inside (0, 1), got {lambda}"
            )))
        }
    }

    pub fn cooperative() -> Self {
        Self(0.5)
    }

    #[inline]
    pub fn lambda(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }

    /// Weight of `agent` (zero-based).
    #[inline]
    pub fn of(self, agent: usize) -> f64 {
        if agent == 0 {
            self.0
        } else {
            1.0 - self.0
        }
    }

    pub fn is_cooperative(self) -> bool {
        self.0 == 0.5
    }
}

impl TryFrom<f64> for ParetoWeight {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<ParetoWeight> for f64 {
    fn from(w: ParetoWeight) -> f64 {
        w.0
    }
}

fn check_finite(m: &Matrix2<f64>, what: &str) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} has non-finite entries")))
    }
}

fn to_rows(m: &Matrix2<f64>) -> [[f64; 2]; 2] {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

/// Contract loadings: entry `(j, i)` is the loading of agent `i`'s contract
/// on project `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct SensitivityMatrix(Matrix2<f64>);

impl SensitivityMatrix {
    pub fn new(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::from_matrix(Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
    }

    pub fn from_matrix(m: Matrix2<f64>) -> Result<Self> {
        check_finite(&m, "sensitivity matrix")?;
        Ok(Self(m))
    }

    #[inline]
    pub fn get(&self, project: usize, agent: usize) -> f64 {
        self.0[(project, agent)]
    }

    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.0
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        to_rows(&self.0)
    }

    /// Total loading on `project` across both contracts.
    pub fn row_sum(&self, project: usize) -> f64 {
        self.0[(project, 0)] + self.0[(project, 1)]
    }

    /// Weighted loading `λ z^{j,1} + (1 − λ) z^{j,2}` on `project`.
    #[inline]
    pub fn aggregate(&self, project: usize, w: ParetoWeight) -> f64 {
        w.lambda() * self.0[(project, 0)] + w.complement() * self.0[(project, 1)]
    }

    pub fn column(&self, agent: usize) -> [f64; 2] {
        [self.0[(0, agent)], self.0[(1, agent)]]
    }
}

impl TryFrom<[[f64; 2]; 2]> for SensitivityMatrix {
    type Error = Error;

    fn try_from(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<SensitivityMatrix> for [[f64; 2]; 2] {
    fn from(z: SensitivityMatrix) -> Self {
        z.rows()
    }
}

/// Efforts: entry `(j, i)` is the effort of agent `i` on project `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct ActionMatrix(Matrix2<f64>);

impl ActionMatrix {
    pub fn new(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::from_matrix(Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
    }

    pub fn from_matrix(m: Matrix2<f64>) -> Result<Self> {
        check_finite(&m, "action matrix")?;
        Ok(Self(m))
    }

    pub fn zero() -> Self {
        Self(Matrix2::zeros())
    }

    #[inline]
    pub fn get(&self, project: usize, agent: usize) -> f64 {
        self.0[(project, agent)]
    }

    #[inline]
    pub fn set(&mut self, project: usize, agent: usize, value: f64) {
        self.0[(project, agent)] = value;
    }

    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.0
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        to_rows(&self.0)
    }

    pub fn column(&self, agent: usize) -> [f64; 2] {
        [self.0[(0, agent)], self.0[(1, agent)]]
    }

    pub fn within_box(&self, a_max: f64) -> bool {
        self.0.iter().all(|v| v.abs() <= a_max)
    }
}

impl TryFrom<[[f64; 2]; 2]> for ActionMatrix {
    type Error = Error;

    fn try_from(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<ActionMatrix> for [[f64; 2]; 2] {
    fn from(a: ActionMatrix) -> Self {
        a.rows()
    }
}

/// `ξ = intercept + loading · X_T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearContract {
    pub intercept: f64,
    pub loading: [f64; 2],
}

impl LinearContract {
    pub fn new(intercept: f64, loading: [f64; 2]) -> Self {
        Self { intercept, loading }
    }

    pub fn zero() -> Self {
        Self::new(0.0, [0.0, 0.0])
    }

    #[inline]
    pub fn payout(&self, x_terminal: [f64; 2]) -> f64 {
        self.intercept + self.loading[0] * x_terminal[0] + self.loading[1] * x_terminal[1]
    }
}

/// Which regime the Principal contracts under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// An exogenous Planner imposes the Pareto optimum with weight `λ`.
    Pareto(ParetoWeight),
    /// The Planner cooperates with the Principal (`λ = 1/2`).
    Cooperative,
    /// No Planner: agents play a Nash equilibrium.
    Nash,
}

/// Everything the closed-form solver produces for one regime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub mode: Mode,
    pub z_star: SensitivityMatrix,
    pub a_star: ActionMatrix,
    pub g_value: f64,
    /// `None` when the Principal is risk neutral.
    pub principal_value: Option<f64>,
    pub contracts: [LinearContract; 2],
}
