use nalgebra::DVector;

use crate::config::SolverConfig;
use crate::error::Error;
use crate::error::Result;
use crate::newton::{center_with, NewtonSystem};
use crate::path::ShortstepParams;
use crate::problem::QpInstance;

use super::longstep::check_start;
use super::{recover_solution, SolveReport, SolveStatus, TraceEntry};

/// Short-step method: divide μ by `k`, then take `N` full Newton steps,
/// until `μ ≤ μ_f`.
///
/// `v0` is first centered at `mu0`; the step bound in `params` assumes a
/// centered start. Pre-centering steps are reported separately from
/// `newton_steps`.
pub fn shortstep(
    qp: &QpInstance,
    v0: &DVector<f64>,
    mu0: f64,
    cfg: &SolverConfig,
    params: &ShortstepParams,
) -> Result<SolveReport> {
    check_start(qp, v0, mu0, cfg)?;
    if params.m != qp.m() {
        return Err(Error::InvalidParameter(format!(
            "short-step parameters were selected for m = {}, instance has m = {}",
            params.m,
            qp.m()
        )));
    }

    let mut mu = mu0;
    let mut steps = 0usize;
    let mut trace = Vec::new();

    let centered = match center_with(
        qp,
        v0,
        mu0,
        cfg.d_tol_center,
        cfg.beta,
        cfg.max_center_steps,
    ) {
        Ok(c) => c,
        Err(e) if e.is_numerical() => {
            return Ok(SolveReport::unsolved(
                SolveStatus::NumericalFailure,
                qp,
                v0,
                mu,
                None,
                0,
                0,
                trace,
                format!("pre-centering failed: {e}"),
            ))
        }
        Err(e) => return Err(e),
    };
    let mut v = centered.v;
    let centering_steps = centered.steps;

    let fail = |status, v: &DVector<f64>, mu, steps, trace, msg: String| {
        SolveReport::unsolved(status, qp, v, mu, None, steps, centering_steps, trace, msg)
    };

    while mu > cfg.mu_f {
        mu /= params.k;
        for _ in 0..params.n_steps {
            if steps >= cfg.max_newton_steps {
                return Ok(fail(
                    SolveStatus::IterationLimit,
                    &v,
                    mu,
                    steps,
                    trace,
                    Error::IterationLimit(cfg.max_newton_steps).to_string(),
                ));
            }
            let d = match NewtonSystem::new(qp, &v).and_then(|sys| sys.solve(mu)) {
                Ok((d, _)) => d,
                Err(e) if e.is_numerical() => {
                    return Ok(fail(SolveStatus::NumericalFailure, &v, mu, steps, trace, e.to_string()))
                }
                Err(e) => return Err(e),
            };
            trace.push(TraceEntry::from_direction(mu, &d));
            v += d;
            steps += 1;
        }
    }

    let step = match NewtonSystem::new(qp, &v).and_then(|sys| sys.step(mu)) {
        Ok(step) => step,
        Err(e) => return Ok(fail(SolveStatus::NumericalFailure, &v, mu, steps, trace, e.to_string())),
    };
    match recover_solution(qp, &step) {
        Ok(rec) => Ok(SolveReport::solved(rec, &step, steps, centering_steps, trace)),
        Err(e) => Ok(fail(SolveStatus::NumericalFailure, &v, mu, steps, trace, e.to_string())),
    }
}
