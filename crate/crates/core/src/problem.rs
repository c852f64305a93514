//! Problem data for `minimize ½xᵀWx + cᵀx subject to Ax + b ≥ 0`.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::spd_factor;

/// Relative asymmetry of `W` tolerated (and removed) at construction.
const SYMMETRY_TOL: f64 = 1e-12;

/// Dense convex QP instance. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct QpInstance {
    w: DMatrix<f64>,
    c: DVector<f64>,
    a: DMatrix<f64>,
    b: DVector<f64>,
}

impl QpInstance {
    /// Build an instance, checking shapes and finiteness.
    ///
    /// `W` must be symmetric up to a relative rounding tolerance; the stored
    /// copy is exactly symmetric.
    pub fn new(
        w: DMatrix<f64>,
        c: DVector<f64>,
        a: DMatrix<f64>,
        b: DVector<f64>,
    ) -> Result<Self> {
        let n = c.len();
        let m = b.len();
        if n == 0 || m == 0 {
            return Err(Error::Dimension(format!(
                "n and m must be positive (n = {n}, m = {m})"
            )));
        }
        if w.shape() != (n, n) {
            return Err(Error::Dimension(format!(
                "W is {}x{}, expected {n}x{n}",
                w.nrows(),
                w.ncols()
            )));
        }
        if a.shape() != (m, n) {
            return Err(Error::Dimension(format!(
                "A is {}x{}, expected {m}x{n}",
                a.nrows(),
                a.ncols()
            )));
        }
        for (name, values) in [
            ("W", w.as_slice()),
            ("c", c.as_slice()),
            ("A", a.as_slice()),
            ("b", b.as_slice()),
        ] {
            if values.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "{name} contains a non-finite entry"
                )));
            }
        }
        let scale = w.amax().max(1.0);
        let asym = (&w - w.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::InvalidInput(format!(
                "W is not symmetric (max |W - Wᵀ| = {asym:e})"
            )));
        }
        let w = (&w + w.transpose()) * 0.5;
        Ok(Self { w, c, a, b })
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn w(&self) -> &DMatrix<f64> {
        &self.w
    }

    pub fn c(&self) -> &DVector<f64> {
        &self.c
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn objective(&self, x: &DVector<f64>) -> f64 {
        0.5 * x.dot(&(&self.w * x)) + self.c.dot(x)
    }

    /// Check the data-verifiable part of the regularity assumptions.
    ///
    /// Slater's condition and bounded sublevel sets cannot be decided from
    /// the data alone and are not checked.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let delta = 1e-10 * self.w.amax().max(1.0);
        let shifted = &self.w + DMatrix::identity(self.n(), self.n()) * delta;
        if let Err(e) = spd_factor(&shifted) {
            violations.push(Violation::WNotPsd(e.to_string()));
        }

        let gram = self.a.tr_mul(&self.a) + &self.w;
        if let Err(e) = spd_factor(&gram) {
            violations.push(Violation::GramNotPd(e.to_string()));
        }

        ValidationReport { violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Shifted Cholesky of `W` failed.
    WNotPsd(String),
    /// Cholesky of `AᵀA + W` failed.
    GramNotPd(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WNotPsd(why) => write!(f, "W is not positive semidefinite: {why}"),
            Violation::GramNotPd(why) => write!(f, "AᵀA + W is not positive definite: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            let msg = self
                .violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ");
            Err(Error::InvalidInput(msg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_qp(w: f64, c: f64, a: f64, b: f64) -> QpInstance {
        QpInstance::new(
            DMatrix::from_element(1, 1, w),
            DVector::from_element(1, c),
            DMatrix::from_element(1, 1, a),
            DVector::from_element(1, b),
        )
        .unwrap()
    }

    #[test]
    fn one_dimensional_instance_is_valid() {
        assert!(scalar_qp(1.0, 0.0, 1.0, 0.0).validate().is_ok());
    }

    #[test]
    fn zero_instance_is_singular() {
        let report = scalar_qp(0.0, 3.0, 0.0, -1.0).validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::GramNotPd(_)));
    }

    #[test]
    fn indefinite_w_is_flagged() {
        let qp = QpInstance::new(
            DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
            DVector::zeros(2),
            DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 3.0]),
            DVector::zeros(2),
        )
        .unwrap();
        let report = qp.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::WNotPsd(_))));
        // 9 - 1 > 0, so the gram check still passes.
        assert!(!report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::GramNotPd(_))));
    }

    #[test]
    fn validate_is_pure() {
        let qp = scalar_qp(0.0, 1.0, 0.0, 1.0);
        let before = qp.clone();
        assert_eq!(qp.validate(), qp.validate());
        assert_eq!(qp, before);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = QpInstance::new(
            DMatrix::identity(2, 2),
            DVector::zeros(2),
            DMatrix::zeros(3, 3),
            DVector::zeros(3),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn rejects_non_finite_and_asymmetric_data() {
        let err = QpInstance::new(
            DMatrix::identity(1, 1),
            DVector::from_element(1, f64::NAN),
            DMatrix::identity(1, 1),
            DVector::zeros(1),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));

        let err = QpInstance::new(
            DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]),
            DVector::zeros(2),
            DMatrix::identity(2, 2),
            DVector::zeros(2),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn stored_w_is_exactly_symmetric() {
        let qp = QpInstance::new(
            DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3 + 1e-16, 1.0]),
            DVector::zeros(2),
            DMatrix::identity(2, 2),
            DVector::zeros(2),
        )
        .unwrap();
        assert_eq!(qp.w()[(0, 1)], qp.w()[(1, 0)]);
    }
}
