use nalgebra::{DMatrix, DVector};

use crate::problem::QpInstance;

/// One-variable instances whose central path is known in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticKind {
    /// `min ½x²  s.t. x ≥ 0`.
    Anchor,
    /// `min ½x² − 2x  s.t. x ≥ 0`.
    Shifted,
}

/// Closed-form central path of an analytic instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralPath {
    kind: AnalyticKind,
}

impl CentralPath {
    /// `x̂(μ)`.
    pub fn x(&self, mu: f64) -> f64 {
        match self.kind {
            AnalyticKind::Anchor => mu.sqrt(),
            // x(x − 2) = μ
            AnalyticKind::Shifted => 1.0 + (1.0 + mu).sqrt(),
        }
    }

    /// Slack `ŝ(μ) = x̂(μ)`.
    pub fn s(&self, mu: f64) -> f64 {
        self.x(mu)
    }

    /// Multiplier `λ̂(μ) = μ / ŝ(μ)`.
    pub fn lambda(&self, mu: f64) -> f64 {
        mu / self.s(mu)
    }

    /// `v̂(μ) = ½ log(λ̂/ŝ)`.
    pub fn v(&self, mu: f64) -> f64 {
        match self.kind {
            AnalyticKind::Anchor => 0.0,
            AnalyticKind::Shifted => 0.5 * (self.lambda(mu) / self.s(mu)).ln(),
        }
    }

    /// Optimal objective value.
    pub fn optimal_value(&self) -> f64 {
        match self.kind {
            AnalyticKind::Anchor => 0.0,
            AnalyticKind::Shifted => -2.0,
        }
    }
}

pub fn analytic_instance(kind: AnalyticKind) -> (QpInstance, CentralPath) {
    let c = match kind {
        AnalyticKind::Anchor => 0.0,
        AnalyticKind::Shifted => -2.0,
    };
    let qp = QpInstance::new(
        DMatrix::from_element(1, 1, 1.0),
        DVector::from_element(1, c),
        DMatrix::from_element(1, 1, 1.0),
        DVector::zeros(1),
    )
    .expect("analytic instance data is well-formed");
    (qp, CentralPath { kind })
}
