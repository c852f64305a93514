//! Long-step driver: shrink μ as far as `‖d(v, μ)‖∞ ≤ 1` allows, then take
//! a damped Newton step. The barrier variants reuse the same loop with a
//! tighter box `1 − ε` and a different `v` update.

use nalgebra::DVector;

use crate::config::{AlgorithmKind, SolverConfig};
use crate::error::{Error, Result};
use crate::newton::{inf_norm, step_size, NewtonSystem};
use crate::path::{min_mu_feasible, DirectionDecomposition, MuBound};
use crate::problem::QpInstance;

use super::update::{DualBarrierUpdate, LogDomainUpdate, PrimalBarrierUpdate, VUpdate};
use super::{recover_solution, SolveReport, SolveStatus, TraceEntry};

pub(crate) fn check_start(qp: &QpInstance, v0: &DVector<f64>, mu0: f64, cfg: &SolverConfig) -> Result<()> {
    cfg.check()?;
    if v0.len() != qp.m() {
        return Err(Error::Dimension(format!(
            "v0 has length {}, expected m = {}",
            v0.len(),
            qp.m()
        )));
    }
    if v0.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("v0 has a non-finite entry".into()));
    }
    if !(mu0 > 0.0 && mu0.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "mu0 must be positive and finite, got {mu0}"
        )));
    }
    Ok(())
}

/// Generic long-step loop.
///
/// `margin` shrinks the μ-rule box to `‖d‖∞ ≤ 1 − margin`; termination still
/// uses `μ ≤ μ_f` and `‖d‖∞ ≤ 1`.
pub fn longstep_with(
    qp: &QpInstance,
    v0: &DVector<f64>,
    mu0: f64,
    cfg: &SolverConfig,
    update: &dyn VUpdate,
    margin: f64,
) -> Result<SolveReport> {
    check_start(qp, v0, mu0, cfg)?;
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::InvalidParameter(format!(
            "box margin must lie in [0, 1), got {margin}"
        )));
    }
    let box_scale = (1.0 - margin).recip();

    let mut v = v0.clone();
    let mut mu = mu0;
    let mut steps = 0usize;
    let mut trace = Vec::new();
    let mut last: Option<(DVector<f64>, DVector<f64>)> = None;

    macro_rules! fail {
        ($status:expr, $msg:expr) => {
            return Ok(SolveReport::unsolved(
                $status,
                qp,
                &v,
                mu,
                last.as_ref().map(|(d, x)| (d, x)),
                steps,
                0,
                trace,
                $msg,
            ))
        };
    }

    loop {
        let sys = match NewtonSystem::new(qp, &v) {
            Ok(sys) => sys,
            Err(e) if e.is_numerical() => fail!(SolveStatus::NumericalFailure, e.to_string()),
            Err(e) => return Err(e),
        };
        let (d, x) = sys.solve(mu)?;
        if mu <= cfg.mu_f && inf_norm(&d) <= 1.0 {
            let step = sys.step(mu)?;
            return match recover_solution(qp, &step) {
                Ok(rec) => Ok(SolveReport::solved(rec, &step, steps, 0, trace)),
                Err(e) => {
                    last = Some((d, x));
                    fail!(SolveStatus::NumericalFailure, e.to_string())
                }
            };
        }
        if steps >= cfg.max_newton_steps {
            last = Some((d, x));
            fail!(
                SolveStatus::IterationLimit,
                Error::IterationLimit(cfg.max_newton_steps).to_string()
            );
        }

        // μ ← min(μ, inf{μ : ‖d(v, μ)‖∞ ≤ 1 − margin}), probing at μ and μ/4.
        let probe = 0.25 * mu;
        let (d_probe, _) = sys.solve(probe)?;
        let dd = DirectionDecomposition::from_probes(v.clone(), mu, &d, probe, &d_probe)?;
        let bound = if margin > 0.0 {
            min_mu_feasible(&dd.scaled(box_scale))
        } else {
            min_mu_feasible(&dd)
        };
        let mu_next = match bound {
            MuBound::Attained(star) => mu.min(star),
            MuBound::Infeasible => mu,
            MuBound::Unbounded => mu.min(cfg.mu_f),
        };
        let (d, x) = if mu_next < mu {
            sys.solve(mu_next)?
        } else {
            (d, x)
        };
        mu = mu_next;

        let alpha = step_size(&d, cfg.beta);
        trace.push(TraceEntry::from_direction(mu, &d));
        match update.apply(&v, &d, alpha) {
            Ok(next) => v = next,
            Err(e) => {
                last = Some((d, x));
                fail!(SolveStatus::NumericalFailure, e.to_string())
            }
        }
        last = Some((d, x));
        steps += 1;
    }
}

/// Log-domain long-step method.
pub fn longstep(qp: &QpInstance, v0: &DVector<f64>, mu0: f64, cfg: &SolverConfig) -> Result<SolveReport> {
    longstep_with(qp, v0, mu0, cfg, &LogDomainUpdate, 0.0)
}

/// Long-step loop with a barrier `v` update; `cfg.algorithm` picks primal or dual.
pub fn barrier_longstep(
    qp: &QpInstance,
    v0: &DVector<f64>,
    mu0: f64,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    let update: &dyn VUpdate = match cfg.algorithm {
        AlgorithmKind::PrimalBarrier => &PrimalBarrierUpdate,
        AlgorithmKind::DualBarrier => &DualBarrierUpdate,
        other => {
            return Err(Error::InvalidParameter(format!(
                "barrier_longstep needs a barrier algorithm, got {other}"
            )))
        }
    };
    longstep_with(qp, v0, mu0, cfg, update, cfg.barrier_eps)
}
