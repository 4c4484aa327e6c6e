//! Contract design for a Principal facing several agents under moral hazard,
//! with or without a Planner that imposes Pareto-optimal efforts.
//!
//! The crate is organised around the two-agent linear-quadratic economy,
//! where everything is available in closed form, plus a generic layer that
//! works with arbitrary drift/cost callables:
//!
//! - [`lq`]: closed-form Pareto, cooperative and Nash solutions, optimal
//!   linear contracts, and the Planner-versus-no-Planner comparison.
//! - [`moop`]: weighted-sum Hamiltonian maximisation, the Planner and Nash
//!   drivers, and the growth-condition and constant checks for general models.
//! - [`bsde`]: forward value processes and a backward Euler solver for the
//!   constant-sensitivity reduction.
//! - [`mc`]: counter-based Monte Carlo simulation of the controlled output and
//!   brute-force Pareto / Nash certificates.
//! - [`cli`]: the batch front end used by the `pareto-contracts` binary.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod bsde;
pub mod cli;
mod error;
pub mod lq;
pub mod mc;
pub mod moop;
pub mod numfmt;

pub use error::{Error, Result};
