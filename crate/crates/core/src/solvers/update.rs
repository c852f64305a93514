//! `v`-update rules applied after the step size is chosen.
//!
//! The log-domain rule moves `v` along `d`. The barrier rules replace the
//! multiplicative slack/multiplier updates by their first-order expansions,
//! which is what one Newton step of the primal (resp. dual) barrier method
//! does to `s` (resp. `λ`).

use nalgebra::DVector;

use crate::error::{Error, Result};

/// Strategy for moving `v` along a damped Newton direction `α⁻¹d`.
pub trait VUpdate: Send + Sync {
    fn name(&self) -> &'static str;

    fn apply(&self, v: &DVector<f64>, d: &DVector<f64>, alpha: f64) -> Result<DVector<f64>>;
}

/// `v ← v + α⁻¹d`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LogDomainUpdate;

/// `v ← −log(e^(−v) ∘ (𝟏 − α⁻¹d))`, i.e. `s ← s + α⁻¹Δs`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PrimalBarrierUpdate;

/// `v ← log(e^v ∘ (𝟏 + α⁻¹d))`, i.e. `λ ← λ + α⁻¹Δλ`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DualBarrierUpdate;

impl VUpdate for LogDomainUpdate {
    fn name(&self) -> &'static str {
        "log-domain"
    }

    fn apply(&self, v: &DVector<f64>, d: &DVector<f64>, alpha: f64) -> Result<DVector<f64>> {
        Ok(v + d / alpha)
    }
}

impl VUpdate for PrimalBarrierUpdate {
    fn name(&self) -> &'static str {
        "primal-barrier"
    }

    fn apply(&self, v: &DVector<f64>, d: &DVector<f64>, alpha: f64) -> Result<DVector<f64>> {
        primal_barrier_step(v, d, alpha)
    }
}

impl VUpdate for DualBarrierUpdate {
    fn name(&self) -> &'static str {
        "dual-barrier"
    }

    fn apply(&self, v: &DVector<f64>, d: &DVector<f64>, alpha: f64) -> Result<DVector<f64>> {
        dual_barrier_step(v, d, alpha)
    }
}

fn log_factor(i: usize, factor: f64) -> Result<f64> {
    if factor > 0.0 {
        Ok(factor.ln())
    } else {
        Err(Error::Numerical(format!(
            "barrier step leaves the domain at component {i} (factor {factor})"
        )))
    }
}

/// `−log(e^(−v) ∘ (𝟏 − α⁻¹d)) = v − log(𝟏 − α⁻¹d)`.
pub fn primal_barrier_step(v: &DVector<f64>, d: &DVector<f64>, alpha: f64) -> Result<DVector<f64>> {
    assert_eq!(v.len(), d.len());
    let mut out = v.clone();
    for (i, (vi, di)) in out.iter_mut().zip(d.iter()).enumerate() {
        *vi -= log_factor(i, 1.0 - di / alpha)?;
    }
    Ok(out)
}

/// `log(e^v ∘ (𝟏 + α⁻¹d)) = v + log(𝟏 + α⁻¹d)`.
pub fn dual_barrier_step(v: &DVector<f64>, d: &DVector<f64>, alpha: f64) -> Result<DVector<f64>> {
    assert_eq!(v.len(), d.len());
    let mut out = v.clone();
    for (i, (vi, di)) in out.iter_mut().zip(d.iter()).enumerate() {
        *vi += log_factor(i, 1.0 + di / alpha)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn dv(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    #[test]
    fn zero_direction_is_identity() {
        let v = dv(&[0.3, -2.0]);
        let d = DVector::zeros(2);
        assert_eq!(primal_barrier_step(&v, &d, 1.0).unwrap(), v);
        assert_eq!(dual_barrier_step(&v, &d, 3.0).unwrap(), v);
    }

    #[test]
    fn single_component_values() {
        let v = dv(&[0.0]);
        let p = primal_barrier_step(&v, &dv(&[-0.6]), 1.0).unwrap();
        assert_abs_diff_eq!(p[0], -0.470_003_629_245_735_6, epsilon = 1e-15);
        let p = primal_barrier_step(&v, &dv(&[0.5]), 1.0).unwrap();
        assert_abs_diff_eq!(p[0], 2f64.ln(), epsilon = 1e-15);
        let q = dual_barrier_step(&v, &dv(&[-0.6]), 1.0).unwrap();
        assert_abs_diff_eq!(q[0], -0.916_290_731_874_155, epsilon = 1e-15);
    }

    #[test]
    fn domain_violation_is_numerical_failure() {
        let v = dv(&[0.0, 0.0]);
        assert!(matches!(
            primal_barrier_step(&v, &dv(&[0.0, 1.0]), 1.0),
            Err(Error::Numerical(_))
        ));
        assert!(matches!(
            dual_barrier_step(&v, &dv(&[-2.0, 0.0]), 1.5),
            Err(Error::Numerical(_))
        ));
    }

    proptest! {
        #[test]
        fn first_order_agreement(
            v in prop::collection::vec(-5.0f64..5.0, 1..10),
            dirs in prop::collection::vec(-1.0f64..1.0, 10),
            alpha in 1.0f64..10.0,
        ) {
            let m = v.len();
            let v = dv(&v);
            // Scale so that ‖d‖∞ = 1e-4.
            let raw = dv(&dirs[..m]);
            let norm = raw.amax();
            prop_assume!(norm > 0.0);
            let d = raw * (1e-4 / norm);
            let linear = LogDomainUpdate.apply(&v, &d, alpha).unwrap();
            let p = PrimalBarrierUpdate.apply(&v, &d, alpha).unwrap();
            let q = DualBarrierUpdate.apply(&v, &d, alpha).unwrap();
            prop_assert!((&p - &linear).amax() <= 1e-7);
            prop_assert!((&q - &linear).amax() <= 1e-7);
        }
    }
}
