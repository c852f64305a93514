//! Random feasible QPs.
//!
//! Draw order from a `ChaCha8Rng` seeded with `seed_from_u64(seed)`:
//! `A` (m×n, row-major), `R` (r×n, row-major), `x` (n), `w` (m), `w'` (m).
//! Normals come from `rand_distr::StandardNormal` (ziggurat on the uniform
//! stream). Rows of `A` and `R` are rescaled to unit Euclidean norm, then
//!
//! ```text
//! W = RᵀR,  s = 𝟏 + |w|/10,  λ = 𝟏 + |w'|/10,  b = s − Ax,  c = Aᵀλ − Wx
//! ```
//!
//! so `(x, s, λ)` is a strictly feasible primal-dual pair by construction.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::problem::QpInstance;

/// Retries (with `seed + 1, seed + 2, ...`) after a failed validation.
pub const MAX_RETRIES: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub n: usize,
    pub m: usize,
    /// Rows of `R` in `W = RᵀR`.
    pub r: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(n: usize, m: usize, r: usize, seed: u64) -> Self {
        Self { n, m, r, seed }
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::InvalidParameter(
                "generator needs n > 0 and m > 0".into(),
            ));
        }
        if self.r > self.n {
            return Err(Error::InvalidParameter(format!(
                "rank parameter r = {} exceeds n = {}",
                self.r, self.n
            )));
        }
        Ok(())
    }
}

/// Running moments of the raw (pre-normalization) entries of `A`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RawStats {
    pub sum: f64,
    pub sum_sq: f64,
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub qp: QpInstance,
    /// Seed that produced `qp` (differs from the requested seed after retries).
    pub seed: u64,
    pub stats: RawStats,
    /// Interior primal point with `Ax + b = s`.
    pub x: DVector<f64>,
    pub s: DVector<f64>,
    pub lambda: DVector<f64>,
}

fn normal_rows(rng: &mut ChaCha8Rng, rows: usize, cols: usize, stats: Option<&mut RawStats>) -> DMatrix<f64> {
    let data: Vec<f64> = (0..rows * cols).map(|_| rng.sample(StandardNormal)).collect();
    if let Some(stats) = stats {
        for &z in &data {
            stats.sum += z;
            stats.sum_sq += z * z;
        }
        stats.count += data.len();
    }
    let mut mat = DMatrix::from_row_slice(rows, cols, &data);
    for mut row in mat.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        }
    }
    mat
}

fn normal_vec(rng: &mut ChaCha8Rng, len: usize) -> DVector<f64> {
    DVector::from_fn(len, |_, _| rng.sample(StandardNormal))
}

fn draw(spec: &GeneratorSpec, seed: u64) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = RawStats::default();
    let a = normal_rows(&mut rng, spec.m, spec.n, Some(&mut stats));
    let w = if spec.r == 0 {
        DMatrix::zeros(spec.n, spec.n)
    } else {
        let r = normal_rows(&mut rng, spec.r, spec.n, None);
        r.tr_mul(&r)
    };
    let x = normal_vec(&mut rng, spec.n);
    let s = normal_vec(&mut rng, spec.m).map(|z| 1.0 + 0.1 * z.abs());
    let lambda = normal_vec(&mut rng, spec.m).map(|z| 1.0 + 0.1 * z.abs());
    let b = &s - &a * &x;
    let c = a.tr_mul(&lambda) - &w * &x;
    let qp = QpInstance::new(w, c, a, b)?;
    Ok(Generated {
        qp,
        seed,
        stats,
        x,
        s,
        lambda,
    })
}

/// Generate with a custom acceptance test; retries with the next seed up to
/// [`MAX_RETRIES`] times.
pub fn generate_checked<F>(spec: &GeneratorSpec, accept: F) -> Result<Generated>
where
    F: Fn(&QpInstance) -> bool,
{
    spec.check()?;
    for attempt in 0..=MAX_RETRIES {
        let seed = spec.seed.wrapping_add(attempt);
        let generated = draw(spec, seed)?;
        if accept(&generated.qp) {
            return Ok(generated);
        }
    }
    Err(Error::Numerical(format!(
        "no valid instance for n = {}, m = {}, r = {} after {} retries from seed {}",
        spec.n, spec.m, spec.r, MAX_RETRIES, spec.seed
    )))
}

pub fn generate_random_qp(spec: &GeneratorSpec) -> Result<QpInstance> {
    generate_checked(spec, |qp| qp.validate().is_ok()).map(|g| g.qp)
}
