//! Special functions and safe quadrature kernels.
//!
//! Everything downstream leans on four ingredients collected here:
//! complete elliptic integrals `K`, `E` (AGM iteration), the Jacobi `dn`
//! function (descending Landen recurrence), the error function, and an
//! adaptive Gauss–Kronrod quadrature that evaluates integrals of the form
//! `∫ A(y) exp(F(y)/eps) dy` without overflowing, returning the result as a
//! [`ScaledIntegral`] `(log-scale, mantissa)` pair.
//!
//! Convention: elliptic functions take the *modulus* `σ`, i.e. the integrand
//! contains `σ² sin²v`. Libraries using the *parameter* `m` satisfy `m = σ²`.

mod elliptic;
mod erf;
mod quad;
mod scaled;

pub use elliptic::{complete_elliptic_e, complete_elliptic_k, jacobi_dn};
pub use erf::{erf, erfc, gauss_tail_over_z2};
pub use quad::{
    integrate_adaptive, integrate_adaptive_split, laplace_quadrature,
    laplace_quadrature_detailed, laplace_quadrature_shifted, LaplaceQuad,
};
pub use scaled::ScaledIntegral;

use thiserror::Error;

/// Errors produced by the special-function and quadrature kernels.
#[derive(Debug, Clone, Error)]
pub enum SpecfunError {
    /// Argument outside the mathematical domain of the function.
    #[error("domain error in {what}: {value} not in {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// The requested value diverges (e.g. `K(1)`).
    #[error("{0} diverges at the requested argument")]
    Divergence(&'static str),
    /// Adaptive subdivision stopped before reaching the tolerance. The best
    /// estimate and its error bound (both on the mantissa scale) are kept.
    #[error("quadrature tolerance not met: estimate {best:?}, abs error {abs_error}")]
    ToleranceNotMet {
        best: ScaledIntegral,
        abs_error: f64,
    },
    /// Integrand returned a non-finite value.
    #[error("integrand returned a non-finite value at y = {at}")]
    BadIntegrand { at: f64 },
}

/// Tolerances and effort budget for adaptive quadrature.
///
/// For scaled integrals the tolerances apply to the mantissa integral, i.e.
/// after `exp(max F / eps)` has been factored out.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-11,
            max_subdivisions: 400,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: u32) -> Result<Self, SpecfunError> {
        if !(abs_tol > 0.0) {
            return Err(SpecfunError::Domain {
                what: "QuadratureSpec.abs_tol",
                value: abs_tol,
                expected: "(0, inf)",
            });
        }
        if !(rel_tol > 0.0) {
            return Err(SpecfunError::Domain {
                what: "QuadratureSpec.rel_tol",
                value: rel_tol,
                expected: "(0, inf)",
            });
        }
        if max_subdivisions < 1 {
            return Err(SpecfunError::Domain {
                what: "QuadratureSpec.max_subdivisions",
                value: max_subdivisions as f64,
                expected: "[1, inf)",
            });
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }

    /// A copy with both tolerances multiplied by `factor`.
    pub fn relaxed(self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

/// Elliptic modulus `σ ∈ [0, 1]`.
///
/// Construction clamps tiny spill-over (`|overshoot| ≤ 1e-12`) and rejects
/// anything further outside the interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    pub const CLAMP_EPS: f64 = 1e-12;

    pub fn new(sigma: f64) -> Result<Self, SpecfunError> {
        if !sigma.is_finite() || sigma < -Self::CLAMP_EPS || sigma > 1.0 + Self::CLAMP_EPS {
            return Err(SpecfunError::Domain {
                what: "EllipticModulus",
                value: sigma,
                expected: "[0, 1]",
            });
        }
        Ok(Self(sigma.clamp(0.0, 1.0)))
    }

    pub fn sigma(self) -> f64 {
        self.0
    }

    /// Parameter `m = σ²`.
    pub fn m(self) -> f64 {
        self.0 * self.0
    }

    /// Complementary parameter `1 - σ²`, computed as `(1-σ)(1+σ)` so no
    /// precision is lost as `σ → 1`.
    pub fn m_complement(self) -> f64 {
        (1.0 - self.0) * (1.0 + self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_accepts_interval_and_clamps_spill() {
        assert_eq!(EllipticModulus::new(0.0).unwrap().sigma(), 0.0);
        assert_eq!(EllipticModulus::new(1.0).unwrap().sigma(), 1.0);
        assert_eq!(EllipticModulus::new(1.0 + 5e-13).unwrap().sigma(), 1.0);
        assert_eq!(EllipticModulus::new(-5e-13).unwrap().sigma(), 0.0);
        assert!(EllipticModulus::new(1.0 + 1e-9).is_err());
        assert!(EllipticModulus::new(-1e-9).is_err());
        assert!(EllipticModulus::new(f64::NAN).is_err());
    }

    #[test]
    fn modulus_complement_is_stable_near_one() {
        // (1-σ)(1+σ) keeps full relative accuracy of the stored modulus,
        // where the naive 1 - σ² would lose everything to cancellation.
        let s = EllipticModulus::new(1.0 - 1e-14).unwrap();
        let delta = 1.0 - s.sigma();
        let exact = delta * (2.0 - delta);
        let rel = (s.m_complement() - exact).abs() / exact;
        assert!(rel < 1e-15, "relative error {rel}");
    }

    #[test]
    fn spec_rejects_nonpositive_tolerances() {
        assert!(QuadratureSpec::new(0.0, 1e-9, 10).is_err());
        assert!(QuadratureSpec::new(1e-9, -1.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-9, 1e-9, 0).is_err());
        assert!(QuadratureSpec::new(1e-9, 1e-9, 1).is_ok());
    }
}
