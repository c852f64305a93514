use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Solver variants shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    LogDomainLong,
    LogDomainShort,
    PrimalBarrier,
    DualBarrier,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 4] = [
        AlgorithmKind::LogDomainLong,
        AlgorithmKind::LogDomainShort,
        AlgorithmKind::PrimalBarrier,
        AlgorithmKind::DualBarrier,
    ];

    /// Name under which the variant is registered.
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::LogDomainLong => "longstep",
            AlgorithmKind::LogDomainShort => "shortstep",
            AlgorithmKind::PrimalBarrier => "primal-barrier",
            AlgorithmKind::DualBarrier => "dual-barrier",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm `{s}`")))
    }
}

/// Tolerances and parameters shared by every solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Step-size parameter, in [½, 1).
    pub beta: f64,
    /// Target centering parameter.
    pub mu_f: f64,
    pub max_newton_steps: usize,
    /// Margin ε for the barrier variants' `‖d‖∞ ≤ 1 − ε` μ-rule.
    pub barrier_eps: f64,
    /// `‖d‖∞` tolerance when centering at fixed μ.
    pub d_tol_center: f64,
    /// Iteration cap for centering at fixed μ.
    pub max_center_steps: usize,
    pub algorithm: AlgorithmKind,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            beta: 0.5,
            mu_f: 1e-3,
            max_newton_steps: 10_000,
            barrier_eps: 0.01,
            d_tol_center: 1e-10,
            max_center_steps: 500,
            algorithm: AlgorithmKind::LogDomainLong,
        }
    }
}

impl SolverConfig {
    pub fn with_algorithm(mut self, algorithm: AlgorithmKind) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn check(&self) -> Result<()> {
        if !(0.5..1.0).contains(&self.beta) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in [0.5, 1), got {}",
                self.beta
            )));
        }
        if !(self.mu_f > 0.0 && self.mu_f.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mu_f must be positive, got {}",
                self.mu_f
            )));
        }
        if !(self.barrier_eps > 0.0 && self.barrier_eps < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "barrier_eps must lie in (0, 1), got {}",
                self.barrier_eps
            )));
        }
        if !(self.d_tol_center > 0.0) {
            return Err(Error::InvalidParameter(
                "d_tol_center must be positive".into(),
            ));
        }
        Ok(())
    }
}
