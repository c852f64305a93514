#![allow(dead_code)]

use logqp::instances::{generate_random_qp, GeneratorSpec};
use logqp::{center, divergence, QpInstance};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tight centering tolerance used wherever `v̂(μ)` serves as an oracle.
pub const CENTER_TOL: f64 = 1e-11;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn instance(n: usize, m: usize, r: usize, seed: u64) -> QpInstance {
    generate_random_qp(&GeneratorSpec::new(n, m, r, seed)).expect("generator succeeds")
}

/// A small instance with shape drawn from `rng`.
pub fn small_instance(rng: &mut ChaCha8Rng) -> QpInstance {
    let n = rng.gen_range(2..=6);
    let m = rng.gen_range(n..=3 * n);
    let r = rng.gen_range(0..=n);
    instance(n, m, r, rng.gen())
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, len: usize, scale: f64) -> DVector<f64> {
    DVector::from_fn(len, |_, _| rng.gen_range(-scale..=scale))
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..=hi.ln()).exp()
}

/// `h_μ(·)` for a fixed instance and μ, measured from a numerically centered point.
pub struct CenteredOracle {
    pub mu: f64,
    pub vhat: DVector<f64>,
}

impl CenteredOracle {
    pub fn new(qp: &QpInstance, mu: f64) -> Self {
        Self::from_start(qp, mu, &DVector::zeros(qp.m()), CENTER_TOL)
    }

    /// Center from a nearby point. At small μ the attainable `‖d‖∞` floor
    /// rises to about 1e-10, so callers pick the tolerance.
    pub fn from_start(qp: &QpInstance, mu: f64, v0: &DVector<f64>, tol: f64) -> Self {
        let vhat = center(qp, v0, mu, tol).expect("centering converges");
        Self { mu, vhat }
    }

    pub fn h(&self, v: &DVector<f64>) -> f64 {
        divergence(&self.vhat, v).unwrap()
    }

    /// Point at divergence `target` from `v̂` along a random direction.
    pub fn at_divergence(&self, rng: &mut ChaCha8Rng, target: f64) -> DVector<f64> {
        let dir = uniform_vec(rng, self.vhat.len(), 1.0).normalize();
        // h is increasing along the ray; bisect on the step length.
        let (mut lo, mut hi) = (0.0, 1.0);
        while self.h(&(&self.vhat + &dir * hi)) < target {
            hi *= 2.0;
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if self.h(&(&self.vhat + &dir * mid)) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        &self.vhat + dir * lo
    }
}
