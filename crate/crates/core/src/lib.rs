//! Log-domain interior-point methods for dense convex quadratic programs
//!
//! ```text
//! minimize ½xᵀWx + cᵀx   subject to   Ax + b ≥ 0
//! ```
//!
//! Slack and multiplier are tied to one vector `v` through
//! `s = √μ e^(−v)`, `λ = √μ e^v`, so `s ∘ λ = μ𝟏` holds identically and the
//! methods only ever update `(v, μ)`. Available solvers:
//!
//! - `longstep`: shrink μ to the smallest value with `‖d(v, μ)‖∞ ≤ 1`, then
//!   take a damped Newton step.
//! - `shortstep`: fixed μ reduction factor and a fixed number of full steps.
//! - `primal-barrier` / `dual-barrier`: the long-step loop with the
//!   first-order (barrier-method) versions of the `v` update.
//!
//! ```
//! use logqp::instances::{analytic_instance, AnalyticKind};
//! use logqp::{AlgorithmRegistry, SolverConfig};
//! use nalgebra::DVector;
//!
//! let (qp, _) = analytic_instance(AnalyticKind::Shifted);
//! let cfg = SolverConfig::default();
//! let report = AlgorithmRegistry::builtin()
//!     .solve(&qp, &DVector::zeros(1), 1.0, &cfg)
//!     .unwrap();
//! assert!(report.is_solved());
//! assert!((report.x[0] - 2.0).abs() < 1e-2);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod instances;
pub mod linalg;
pub mod newton;
pub mod path;
pub mod problem;
pub mod solvers;

pub use config::{AlgorithmKind, SolverConfig};
pub use error::{Error, Result};
pub use linalg::{spd_factor, SpdFactorization};
pub use newton::{
    center, center_with, divergence, logdomain_residual, newton_direction, step_size, NewtonStep,
    NewtonSystem,
};
pub use path::{
    decompose_direction, least_squares_mu, min_mu_feasible, q, q_inverse,
    select_shortstep_params, DirectionDecomposition, MuBound, ShortstepParams,
};
pub use problem::{QpInstance, ValidationReport, Violation};
pub use solvers::{
    recover_solution, Algorithm, AlgorithmRegistry, RecoveredSolution, SolveReport, SolveStatus,
    TraceEntry,
};

use nalgebra::DVector;

/// Least-squares μ at `v`, falling back to 1 when it is undefined.
///
/// The decomposition is probed at μ = 1 and μ = ¼.
pub fn initial_mu(qp: &QpInstance, v: &DVector<f64>) -> Result<f64> {
    let dd = decompose_direction(qp, v, 1.0, 0.25)?;
    Ok(least_squares_mu(&dd).unwrap_or(1.0))
}
