//! Dense Cholesky factorization for symmetric positive-definite systems.
//!
//! The factor is stored row-major as a packed lower triangle so that the
//! inner products in both the factorization and the triangular solves run
//! over contiguous memory.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Lower-triangular Cholesky factor `L` with `M = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct SpdFactorization {
    n: usize,
    // Row i occupies [i(i+1)/2, i(i+1)/2 + i].
    lower: Vec<f64>,
}

#[inline]
fn row_start(i: usize) -> usize {
    i * (i + 1) / 2
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Factor a symmetric matrix. Only the lower triangle of `m` is read.
///
/// A pivot no larger than `n·ε·max|M_ii|` is treated as a failure.
pub fn spd_factor(m: &DMatrix<f64>) -> Result<SpdFactorization> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            n,
            m.ncols()
        )));
    }
    // Pivots at or below this level mean the matrix is singular to working precision.
    let max_diag = (0..n).map(|i| m[(i, i)].abs()).fold(0.0, f64::max);
    let pivot_floor = max_diag * n as f64 * f64::EPSILON;
    let mut lower = vec![0.0; row_start(n)];
    for i in 0..n {
        let ri = row_start(i);
        for j in 0..=i {
            let rj = row_start(j);
            let s = dot(&lower[ri..ri + j], &lower[rj..rj + j]);
            let value = m[(i, j)] - s;
            if i == j {
                if !(value > pivot_floor) || !value.is_finite() {
                    return Err(Error::NotPositiveDefinite { pivot: i, value });
                }
                lower[ri + i] = value.sqrt();
            } else {
                lower[ri + j] = value / lower[rj + j];
            }
        }
    }
    Ok(SpdFactorization { n, lower })
}

impl SpdFactorization {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solve `M x = f`.
    pub fn solve(&self, f: &DVector<f64>) -> DVector<f64> {
        assert_eq!(f.len(), self.n, "right-hand side has wrong length");
        let n = self.n;
        // L y = f
        let mut y = vec![0.0; n];
        for i in 0..n {
            let ri = row_start(i);
            let s = dot(&self.lower[ri..ri + i], &y[..i]);
            y[i] = (f[i] - s) / self.lower[ri + i];
        }
        // Lᵀ x = y, column sweep over rows of L.
        let mut x = y;
        for i in (0..n).rev() {
            let ri = row_start(i);
            x[i] /= self.lower[ri + i];
            let xi = x[i];
            for (k, l) in self.lower[ri..ri + i].iter().enumerate() {
                x[k] -= l * xi;
            }
        }
        DVector::from_vec(x)
    }

    /// Smallest diagonal entry of `L`; a cheap conditioning indicator.
    pub fn min_pivot(&self) -> f64 {
        (0..self.n)
            .map(|i| self.lower[row_start(i) + i])
            .fold(f64::INFINITY, f64::min)
    }
}
