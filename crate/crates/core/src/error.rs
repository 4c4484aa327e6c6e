use thiserror::Error;

/// Errors raised by the solvers, checkers and simulators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The Pareto first-order conditions leave a one-parameter family of
    /// optima at equal weights.
    #[error("Pareto weight 1/2 is degenerate; use the cooperative solution instead")]
    DegenerateWeight,

    #[error("principal risk aversion is zero: the exponential principal value is degenerate")]
    RiskNeutralPrincipal,

    #[error("model error: {0}")]
    Model(String),

    #[error("no convergence after {iterations} iterations (last change {last_change:e})")]
    NoConvergence { iterations: usize, last_change: f64 },

    #[error("backward recursion diverged at step {step}: |y| = {value:e}")]
    Divergence { step: usize, value: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("ensemble was simulated under a different action than the one supplied")]
    PolicyMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
