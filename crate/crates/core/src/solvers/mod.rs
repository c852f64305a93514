//! Interior-point drivers and the registry that selects them by name.

mod longstep;
mod registry;
mod shortstep;
mod update;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::newton::{inf_norm, NewtonStep};
use crate::problem::QpInstance;

pub use longstep::{barrier_longstep, longstep, longstep_with};
pub use registry::{Algorithm, AlgorithmRegistry, Barrier, LongStep, ShortStep};
pub use shortstep::shortstep;
pub use update::{
    dual_barrier_step, primal_barrier_step, DualBarrierUpdate, LogDomainUpdate,
    PrimalBarrierUpdate, VUpdate,
};

/// Tolerance on the recovered equality constraints.
pub const FEASIBILITY_TOL: f64 = 1e-6;
/// Relative tolerance on the gap identity `⟨s, λ⟩ = μ(m − ‖d‖²)`.
pub const GAP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Solved,
    IterationLimit,
    NumericalFailure,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Solved => "solved",
            SolveStatus::IterationLimit => "iteration-limit",
            SolveStatus::NumericalFailure => "numerical-failure",
        }
    }
}

/// Per-iteration record, taken before the `v` update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub mu: f64,
    pub d_inf: f64,
    /// `μ(m − ‖d‖²)`.
    pub gap: f64,
}

impl TraceEntry {
    pub fn from_direction(mu: f64, d: &DVector<f64>) -> Self {
        Self {
            mu,
            d_inf: inf_norm(d),
            gap: mu * (d.len() as f64 - d.norm_squared()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub x: DVector<f64>,
    pub s: DVector<f64>,
    pub lambda: DVector<f64>,
    /// Final log-domain iterate.
    pub v: DVector<f64>,
    pub final_mu: f64,
    /// `⟨s, λ⟩`.
    pub gap: f64,
    /// `‖d‖²` of the direction used for recovery.
    pub d_norm_sq: f64,
    pub d_inf: f64,
    /// `v` updates performed by the main loop.
    pub newton_steps: usize,
    /// Steps spent pre-centering (short-step only).
    pub centering_steps: usize,
    pub trace: Vec<TraceEntry>,
    pub message: Option<String>,
}

impl SolveReport {
    pub fn is_solved(&self) -> bool {
        self.status == SolveStatus::Solved
    }

    pub fn objective(&self, qp: &QpInstance) -> f64 {
        qp.objective(&self.x)
    }

    pub(crate) fn solved(
        recovered: RecoveredSolution,
        step: &NewtonStep,
        newton_steps: usize,
        centering_steps: usize,
        trace: Vec<TraceEntry>,
    ) -> Self {
        Self {
            status: SolveStatus::Solved,
            x: recovered.x,
            s: recovered.s,
            lambda: recovered.lambda,
            v: step.v.clone(),
            final_mu: step.mu,
            gap: recovered.gap,
            d_norm_sq: step.d.norm_squared(),
            d_inf: step.d_inf(),
            newton_steps,
            centering_steps,
            trace,
            message: None,
        }
    }

    /// Report for a run that stopped early, built from the last state seen.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn unsolved(
        status: SolveStatus,
        qp: &QpInstance,
        v: &DVector<f64>,
        mu: f64,
        last: Option<(&DVector<f64>, &DVector<f64>)>,
        newton_steps: usize,
        centering_steps: usize,
        trace: Vec<TraceEntry>,
        message: String,
    ) -> Self {
        let root = mu.sqrt();
        let s = v.map(|vi| root * (-vi).exp());
        let lambda = v.map(|vi| root * vi.exp());
        let (x, d_norm_sq, d_inf) = match last {
            Some((d, x)) => (x.clone(), d.norm_squared(), inf_norm(d)),
            None => (DVector::zeros(qp.n()), f64::NAN, f64::NAN),
        };
        Self {
            status,
            x,
            gap: s.dot(&lambda),
            s,
            lambda,
            v: v.clone(),
            final_mu: mu,
            d_norm_sq,
            d_inf,
            newton_steps,
            centering_steps,
            trace,
            message: Some(message),
        }
    }
}

/// Primal-dual point recovered from a Newton step with `‖d‖∞ ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredSolution {
    pub x: DVector<f64>,
    pub s: DVector<f64>,
    pub lambda: DVector<f64>,
    pub gap: f64,
}

/// `λ = √μ(e^v + e^v∘d)`, `s = √μ(e^(−v) − e^(−v)∘d)`, `x = x(v, μ)`.
///
/// Fails with [`Error::DirectionTooLarge`] when `‖d‖∞ > 1`, and with
/// [`Error::Numerical`] if the recovered point misses the feasibility or
/// gap identities.
pub fn recover_solution(qp: &QpInstance, step: &NewtonStep) -> Result<RecoveredSolution> {
    let d_inf = step.d_inf();
    if !(d_inf <= 1.0) {
        return Err(Error::DirectionTooLarge(d_inf));
    }
    let root = step.mu.sqrt();
    let lambda = step.v.zip_map(&step.d, |vi, di| root * vi.exp() * (1.0 + di));
    let s = step.v.zip_map(&step.d, |vi, di| root * (-vi).exp() * (1.0 - di));
    let x = step.x.clone();

    let primal = qp.a() * &x + qp.b() - &s;
    let primal_scale = 1.0 + s.amax();
    if inf_norm(&primal) > FEASIBILITY_TOL * primal_scale {
        return Err(Error::Numerical(format!(
            "recovered slack misses Ax + b = s by {:e}",
            inf_norm(&primal)
        )));
    }
    let wx_c = qp.w() * &x + qp.c();
    let dual = qp.a().tr_mul(&lambda) - &wx_c;
    let dual_scale = 1.0 + wx_c.amax().max(lambda.amax());
    if inf_norm(&dual) > FEASIBILITY_TOL * dual_scale {
        return Err(Error::Numerical(format!(
            "recovered multiplier misses Aᵀλ = Wx + c by {:e}",
            inf_norm(&dual)
        )));
    }
    if s.min() < 0.0 || lambda.min() < 0.0 {
        return Err(Error::Numerical("recovered point has a negative entry".into()));
    }
    let gap = s.dot(&lambda);
    let predicted = step.mu * (qp.m() as f64 - step.d.norm_squared());
    if (gap - predicted).abs() > GAP_TOL * (1.0 + gap) {
        return Err(Error::Numerical(format!(
            "gap {gap:e} disagrees with μ(m − ‖d‖²) = {predicted:e}"
        )));
    }
    Ok(RecoveredSolution { x, s, lambda, gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{analytic_instance, AnalyticKind};
    use crate::newton::newton_direction;
    use approx::assert_abs_diff_eq;

    #[test]
    fn anchor_centered_recovery() {
        let (qp, _) = analytic_instance(AnalyticKind::Anchor);
        let step = newton_direction(&qp, &DVector::zeros(1), 1.0).unwrap();
        let r = recover_solution(&qp, &step).unwrap();
        assert_abs_diff_eq!(r.x[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.s[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.lambda[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.gap, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn centered_gap_is_mu_m() {
        let (qp, path) = analytic_instance(AnalyticKind::Shifted);
        let mu = 0.7;
        let step = newton_direction(&qp, &DVector::from_element(1, path.v(mu)), mu).unwrap();
        let r = recover_solution(&qp, &step).unwrap();
        assert_abs_diff_eq!(r.gap, mu, epsilon = 1e-12);
        assert_abs_diff_eq!(r.s[0] * r.lambda[0], mu, epsilon = 1e-12);
    }

    #[test]
    fn boundary_direction_zeroes_a_component() {
        // Shifted instance, v = 0, μ = 1: 2x = 2 + 2 ⇒ x = 2, d = 1 − x = −1.
        let (qp, _) = analytic_instance(AnalyticKind::Shifted);
        let step = newton_direction(&qp, &DVector::zeros(1), 1.0).unwrap();
        assert_abs_diff_eq!(step.d[0], -1.0, epsilon = 1e-14);
        let r = recover_solution(&qp, &step).unwrap();
        assert_abs_diff_eq!(r.lambda[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.s[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.gap, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn oversized_direction_is_rejected() {
        // Shifted instance, v = 0: x = √μ + 1, d = −1/√μ.
        let (qp, _) = analytic_instance(AnalyticKind::Shifted);
        let step = newton_direction(&qp, &DVector::zeros(1), 0.25).unwrap();
        assert_abs_diff_eq!(step.d[0], -2.0, epsilon = 1e-14);
        assert!(matches!(
            recover_solution(&qp, &step),
            Err(Error::DirectionTooLarge(_))
        ));
    }
}
