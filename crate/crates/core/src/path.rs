//! Selection of the centering parameter μ.
//!
//! At fixed `v` the Newton direction is affine in `t = μ^(−1/2)`:
//! `d(μ) = d0 + t·d1`. Two solves against one factorization recover the
//! pair, after which the smallest admissible μ, the least-squares μ and any
//! probe `d(μ)` are O(m).

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::newton::NewtonSystem;
use crate::problem::QpInstance;

/// `q(t) = 2(cosh t − 1)`, evaluated as `4 sinh²(t/2)`.
pub fn q(t: f64) -> f64 {
    let s = (0.5 * t).sinh();
    4.0 * s * s
}

/// Nonnegative inverse of [`q`]: `arccosh(1 + y/2) = 2 asinh(√y / 2)`.
pub fn q_inverse(y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "q_inverse needs y ≥ 0, got {y}"
        )));
    }
    Ok(2.0 * (0.5 * y.sqrt()).asinh())
}

/// `d(μ) = d0 + μ^(−1/2)·d1` at the expansion point `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionDecomposition {
    pub d0: DVector<f64>,
    pub d1: DVector<f64>,
    pub v: DVector<f64>,
}

impl DirectionDecomposition {
    /// Build from directions at two distinct μ values.
    pub fn from_probes(
        v: DVector<f64>,
        mu1: f64,
        d_hat1: &DVector<f64>,
        mu2: f64,
        d_hat2: &DVector<f64>,
    ) -> Result<Self> {
        if mu1 == mu2 {
            return Err(Error::InvalidParameter(
                "decomposition needs two distinct μ values".into(),
            ));
        }
        let k1 = mu1.sqrt().recip();
        let k2 = mu2.sqrt().recip();
        let c1 = (k1 - k2).recip();
        let c0 = -k2 * c1;
        let d1 = (d_hat1 - d_hat2) * c1;
        let d0 = d_hat1 * c0 + d_hat2 * (1.0 - c0);
        Ok(Self { d0, d1, v })
    }

    /// Reconstructed direction at μ.
    pub fn at(&self, mu: f64) -> DVector<f64> {
        &self.d0 + &self.d1 * mu.sqrt().recip()
    }

    /// Both parts multiplied by `factor`; used to shrink the `‖d‖∞` box.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            d0: &self.d0 * factor,
            d1: &self.d1 * factor,
            v: self.v.clone(),
        }
    }
}

/// Decompose using an already-factored system.
pub fn decompose_with(sys: &NewtonSystem<'_>, mu1: f64, mu2: f64) -> Result<DirectionDecomposition> {
    if mu1 == mu2 {
        return Err(Error::InvalidParameter(
            "decomposition needs two distinct μ values".into(),
        ));
    }
    let (d_hat1, _) = sys.solve(mu1)?;
    let (d_hat2, _) = sys.solve(mu2)?;
    DirectionDecomposition::from_probes(sys.v().clone(), mu1, &d_hat1, mu2, &d_hat2)
}

pub fn decompose_direction(
    qp: &QpInstance,
    v: &DVector<f64>,
    mu1: f64,
    mu2: f64,
) -> Result<DirectionDecomposition> {
    if mu1 == mu2 {
        return Err(Error::InvalidParameter(
            "decomposition needs two distinct μ values".into(),
        ));
    }
    let sys = NewtonSystem::new(qp, v)?;
    decompose_with(&sys, mu1, mu2)
}

/// Outcome of minimizing μ subject to `‖d0 + μ^(−1/2) d1‖∞ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MuBound {
    /// Smallest admissible μ.
    Attained(f64),
    /// No μ > 0 satisfies the box.
    Infeasible,
    /// Every μ > 0 satisfies the box (`d1 = 0`, `‖d0‖∞ ≤ 1`).
    Unbounded,
}

/// Smallest μ with `−𝟏 ≤ d0 + μ^(−1/2) d1 ≤ 𝟏`, in one pass over the components.
pub fn min_mu_feasible(dd: &DirectionDecomposition) -> MuBound {
    // Feasible t = μ^(−1/2) form the interval [lo, hi] ∩ (0, ∞).
    let mut lo = 0.0_f64;
    let mut hi = f64::INFINITY;
    for (&a, &g) in dd.d0.iter().zip(dd.d1.iter()) {
        if g == 0.0 {
            if a.abs() > 1.0 {
                return MuBound::Infeasible;
            }
            continue;
        }
        let (t_lo, t_hi) = if g > 0.0 {
            ((-1.0 - a) / g, (1.0 - a) / g)
        } else {
            ((1.0 - a) / g, (-1.0 - a) / g)
        };
        lo = lo.max(t_lo);
        hi = hi.min(t_hi);
        if hi <= 0.0 {
            return MuBound::Infeasible;
        }
    }
    if lo > hi {
        MuBound::Infeasible
    } else if hi.is_infinite() {
        MuBound::Unbounded
    } else {
        MuBound::Attained(hi.powi(-2))
    }
}

/// μ minimizing `‖d(μ)‖²`, defined when `d0ᵀd1 < 0`.
pub fn least_squares_mu(dd: &DirectionDecomposition) -> Option<f64> {
    let cross = dd.d0.dot(&dd.d1);
    let d1_sq = dd.d1.norm_squared();
    if cross < 0.0 && d1_sq > 0.0 {
        let root = d1_sq / -cross;
        Some(root * root)
    } else {
        None
    }
}

/// Parameters `(k, N)` of the short-step method for a given `(θ, ε, m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortstepParams {
    pub theta: f64,
    pub epsilon: f64,
    /// Full Newton steps per μ reduction.
    pub n_steps: u32,
    /// μ reduction factor.
    pub k: f64,
    pub zeta: f64,
    pub c_rate: f64,
    pub m: usize,
}

impl ShortstepParams {
    /// Guaranteed upper bound `N⌈c⁻¹√m log(μ0/μf)⌉` on Newton steps.
    pub fn step_bound(&self, mu0: f64, mu_f: f64) -> u64 {
        if mu0 <= mu_f {
            return 0;
        }
        let outer = ((self.m as f64).sqrt() * (mu0 / mu_f).ln() / self.c_rate).ceil();
        self.n_steps as u64 * outer as u64
    }
}

pub fn select_shortstep_params(theta: f64, epsilon: f64, m: usize) -> Result<ShortstepParams> {
    if !(theta > 0.0 && theta <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, 1/2], got {theta}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let radius = q_inverse(theta)?;
    if !(epsilon > 0.0 && epsilon < radius) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, q⁻¹(θ) = {radius}), got {epsilon}"
        )));
    }
    let target = epsilon * epsilon;
    let mut n_steps = 1u32;
    while theta.powf(2f64.powi(n_steps as i32)) > target {
        n_steps += 1;
    }
    let zeta = radius - epsilon;
    let k = (2.0 * q_inverse(zeta * zeta / m as f64)?).exp();
    let c_rate = 2.0 * q_inverse(zeta * zeta)?;
    Ok(ShortstepParams {
        theta,
        epsilon,
        n_steps,
        k,
        zeta,
        c_rate,
        m,
    })
}
