//! Newton's method on the log-domain central-path equations
//!
//! ```text
//! √μ Aᵀe^v = Wx + c,    √μ e^(−v) = Ax + b
//! ```
//!
//! At a fixed `v` the Newton direction for every μ comes from one SPD
//! matrix `AᵀQ(v)A + W` with `Q(v) = diag(e^(2v))`, so [`NewtonSystem`]
//! factors it once and answers any number of μ queries.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{spd_factor, SpdFactorization};
use crate::path::q;
use crate::problem::QpInstance;

/// Largest `|2v_i|` allowed before exponentiation.
pub const EXP_CLAMP: f64 = 700.0;

/// Default cap on centering iterations.
pub const MAX_CENTER_STEPS: usize = 500;

/// Factored Newton system at a fixed expansion point `v`.
#[derive(Debug, Clone)]
pub struct NewtonSystem<'a> {
    qp: &'a QpInstance,
    v: DVector<f64>,
    ev: DVector<f64>,
    factorization: Arc<SpdFactorization>,
}

impl<'a> NewtonSystem<'a> {
    pub fn new(qp: &'a QpInstance, v: &DVector<f64>) -> Result<Self> {
        if v.len() != qp.m() {
            return Err(Error::Dimension(format!(
                "v has length {}, expected m = {}",
                v.len(),
                qp.m()
            )));
        }
        if let Some(i) = v.iter().position(|vi| !vi.is_finite()) {
            return Err(Error::Numerical(format!("v[{i}] is not finite")));
        }
        if let Some(i) = v.iter().position(|vi| (2.0 * vi).abs() > EXP_CLAMP) {
            return Err(Error::Numerical(format!(
                "iterate reached the exponent clamp (v[{i}] = {})",
                v[i]
            )));
        }
        let ev = v.map(f64::exp);
        // B = diag(e^v) A, so BᵀB = AᵀQ(v)A.
        let mut scaled = qp.a().clone();
        for (i, mut row) in scaled.row_iter_mut().enumerate() {
            row *= ev[i];
        }
        let m: DMatrix<f64> = scaled.tr_mul(&scaled) + qp.w();
        let factorization = Arc::new(spd_factor(&m)?);
        Ok(Self {
            qp,
            v: v.clone(),
            ev,
            factorization,
        })
    }

    pub fn v(&self) -> &DVector<f64> {
        &self.v
    }

    pub fn factorization(&self) -> &Arc<SpdFactorization> {
        &self.factorization
    }

    /// Newton direction `d(v, μ)` and associated point `x(v, μ)`.
    pub fn solve(&self, mu: f64) -> Result<(DVector<f64>, DVector<f64>)> {
        check_mu(mu)?;
        let qp = self.qp;
        let root = mu.sqrt();
        // rhs = 2√μ Aᵀe^v − (c + AᵀQ(v)b) = Aᵀ(2√μ e^v − e^v∘e^v∘b) − c
        let weights = self
            .ev
            .zip_map(qp.b(), |e, bi| 2.0 * root * e - e * e * bi);
        let rhs = qp.a().tr_mul(&weights) - qp.c();
        let x = self.factorization.solve(&rhs);
        let d = self.direction_at(mu, &x);
        Ok((d, x))
    }

    /// `d = 𝟏 − (1/√μ) e^v ∘ (Ax + b)`.
    fn direction_at(&self, mu: f64, x: &DVector<f64>) -> DVector<f64> {
        let slack = self.qp.a() * x + self.qp.b();
        let inv_root = 1.0 / mu.sqrt();
        self.ev.zip_map(&slack, |e, s| 1.0 - inv_root * e * s)
    }

    pub fn step(&self, mu: f64) -> Result<NewtonStep> {
        let (d, x) = self.solve(mu)?;
        Ok(NewtonStep {
            d,
            x,
            mu,
            v: self.v.clone(),
            factorization: Arc::clone(&self.factorization),
        })
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "mu must be positive and finite, got {mu}"
        )))
    }
}

/// Newton direction with its associated primal point.
#[derive(Debug, Clone)]
pub struct NewtonStep {
    pub d: DVector<f64>,
    pub x: DVector<f64>,
    pub mu: f64,
    /// Expansion point.
    pub v: DVector<f64>,
    factorization: Arc<SpdFactorization>,
}

impl NewtonStep {
    /// Factorization of `AᵀQ(v)A + W`, reusable for other μ at the same `v`.
    pub fn factorization(&self) -> &Arc<SpdFactorization> {
        &self.factorization
    }

    pub fn d_inf(&self) -> f64 {
        inf_norm(&self.d)
    }
}

pub fn newton_direction(qp: &QpInstance, v: &DVector<f64>, mu: f64) -> Result<NewtonStep> {
    check_mu(mu)?;
    NewtonSystem::new(qp, v)?.step(mu)
}

pub fn inf_norm(x: &DVector<f64>) -> f64 {
    x.amax()
}

/// Divergence `h(u, v) = ⟨e^u, e^(−v)⟩ + ⟨e^(−u), e^v⟩ − 2m`.
///
/// Evaluated as `Σ q(v_i − u_i)` with `q(t) = 4 sinh²(t/2)`, which is
/// nonnegative and free of cancellation near `u = v`.
pub fn divergence(u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::Dimension(format!(
            "divergence of vectors with lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(u.iter().zip(v.iter()).map(|(a, b)| q(b - a)).sum())
}

/// Step-size rule `α = max(1, ‖d‖∞² / (2β))`.
pub fn step_size(d: &DVector<f64>, beta: f64) -> f64 {
    let dn = inf_norm(d);
    (dn * dn / (2.0 * beta)).max(1.0)
}

/// Result of [`center_with`].
#[derive(Debug, Clone)]
pub struct Centered {
    pub v: DVector<f64>,
    pub steps: usize,
}

/// Damped Newton iterations at fixed μ until `‖d(v, μ)‖∞ ≤ d_tol`.
pub fn center_with(
    qp: &QpInstance,
    v0: &DVector<f64>,
    mu: f64,
    d_tol: f64,
    beta: f64,
    max_steps: usize,
) -> Result<Centered> {
    check_mu(mu)?;
    if !(d_tol > 0.0) {
        return Err(Error::InvalidParameter("d_tol must be positive".into()));
    }
    let mut v = v0.clone();
    for steps in 0..=max_steps {
        let (d, _) = NewtonSystem::new(qp, &v)?.solve(mu)?;
        if inf_norm(&d) <= d_tol {
            return Ok(Centered { v, steps });
        }
        if steps == max_steps {
            break;
        }
        let alpha = step_size(&d, beta);
        v.axpy(1.0 / alpha, &d, 1.0);
    }
    Err(Error::Numerical(format!(
        "centering did not reach ‖d‖∞ ≤ {d_tol:e} within {max_steps} steps"
    )))
}

/// Centered point `v̂(μ)` approximated from `v0` with β = ½.
pub fn center(qp: &QpInstance, v0: &DVector<f64>, mu: f64, d_tol: f64) -> Result<DVector<f64>> {
    center_with(qp, v0, mu, d_tol, 0.5, MAX_CENTER_STEPS).map(|c| c.v)
}

/// Infinity-norm residuals of the log-domain central-path equations:
/// `(‖√μAᵀe^v − Wx − c‖∞, ‖√μe^(−v) − Ax − b‖∞)`.
pub fn logdomain_residual(
    qp: &QpInstance,
    v: &DVector<f64>,
    x: &DVector<f64>,
    mu: f64,
) -> (f64, f64) {
    let root = mu.sqrt();
    let dual = qp.a().tr_mul(&v.map(|vi| root * vi.exp())) - qp.w() * x - qp.c();
    let primal = v.map(|vi| root * (-vi).exp()) - qp.a() * x - qp.b();
    (inf_norm(&dual), inf_norm(&primal))
}
