use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;

use crate::config::{AlgorithmKind, SolverConfig};
use crate::error::{Error, Result};
use crate::path::select_shortstep_params;
use crate::problem::QpInstance;

use super::{barrier_longstep, longstep, shortstep, SolveReport};

/// A solver variant selectable at runtime.
pub trait Algorithm: Send + Sync {
    fn name(&self) -> &str;

    fn description(&self) -> &str;

    fn solve(
        &self,
        qp: &QpInstance,
        v0: &DVector<f64>,
        mu0: f64,
        cfg: &SolverConfig,
    ) -> Result<SolveReport>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LongStep;

impl Algorithm for LongStep {
    fn name(&self) -> &str {
        AlgorithmKind::LogDomainLong.name()
    }

    fn description(&self) -> &str {
        "log-domain long-step method with least-μ line search"
    }

    fn solve(&self, qp: &QpInstance, v0: &DVector<f64>, mu0: f64, cfg: &SolverConfig) -> Result<SolveReport> {
        longstep(qp, v0, mu0, cfg)
    }
}

/// Short-step method; `(k, N)` are derived from `(θ, ε)` and the instance's `m`.
#[derive(Debug, Clone, Copy)]
pub struct ShortStep {
    pub theta: f64,
    pub epsilon: f64,
}

impl Default for ShortStep {
    fn default() -> Self {
        Self {
            theta: 0.5,
            epsilon: 0.25,
        }
    }
}

impl Algorithm for ShortStep {
    fn name(&self) -> &str {
        AlgorithmKind::LogDomainShort.name()
    }

    fn description(&self) -> &str {
        "log-domain short-step method with fixed μ reduction"
    }

    fn solve(&self, qp: &QpInstance, v0: &DVector<f64>, mu0: f64, cfg: &SolverConfig) -> Result<SolveReport> {
        let params = select_shortstep_params(self.theta, self.epsilon, qp.m())?;
        shortstep(qp, v0, mu0, cfg, &params)
    }
}

/// Long-step loop with the primal or dual barrier update.
#[derive(Debug, Clone, Copy)]
pub struct Barrier {
    kind: AlgorithmKind,
}

impl Barrier {
    pub fn primal() -> Self {
        Self {
            kind: AlgorithmKind::PrimalBarrier,
        }
    }

    pub fn dual() -> Self {
        Self {
            kind: AlgorithmKind::DualBarrier,
        }
    }
}

impl Algorithm for Barrier {
    fn name(&self) -> &str {
        self.kind.name()
    }

    fn description(&self) -> &str {
        match self.kind {
            AlgorithmKind::PrimalBarrier => "long-step loop with the primal barrier slack update",
            _ => "long-step loop with the dual barrier multiplier update",
        }
    }

    fn solve(&self, qp: &QpInstance, v0: &DVector<f64>, mu0: f64, cfg: &SolverConfig) -> Result<SolveReport> {
        let cfg = cfg.clone().with_algorithm(self.kind);
        barrier_longstep(qp, v0, mu0, &cfg)
    }
}

/// Name-indexed collection of [`Algorithm`]s.
#[derive(Clone, Default)]
pub struct AlgorithmRegistry {
    entries: BTreeMap<String, Arc<dyn Algorithm>>,
}

impl fmt::Debug for AlgorithmRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

impl AlgorithmRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding the four built-in variants.
    pub fn builtin() -> Self {
        Self::with_shortstep(ShortStep::default())
    }

    /// Built-ins, with custom short-step parameters.
    pub fn with_shortstep(short: ShortStep) -> Self {
        let mut reg = Self::new();
        reg.register(LongStep);
        reg.register(short);
        reg.register(Barrier::primal());
        reg.register(Barrier::dual());
        reg
    }

    /// Register an algorithm, replacing any previous entry with the same name.
    pub fn register<A: Algorithm + 'static>(&mut self, algorithm: A) {
        self.entries
            .insert(algorithm.name().to_string(), Arc::new(algorithm));
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Algorithm>> {
        self.entries.get(name).cloned().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown algorithm `{name}` (available: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn for_kind(&self, kind: AlgorithmKind) -> Result<Arc<dyn Algorithm>> {
        self.get(kind.name())
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }

    /// Dispatch on `cfg.algorithm`.
    pub fn solve(&self, qp: &QpInstance, v0: &DVector<f64>, mu0: f64, cfg: &SolverConfig) -> Result<SolveReport> {
        self.for_kind(cfg.algorithm)?.solve(qp, v0, mu0, cfg)
    }
}
