//! Dissipative Burgers equation `u_t + u u_x = eps u_xx` with the initial
//! datum `u(x, -1) = -(x + a x^2) Θ(-x)` (a weak discontinuity at the
//! origin, posed at time `t = -1`).
//!
//! The module carries four layers:
//!
//! - the inviscid (`eps = 0`) limit [`u0_limit`] with its shock curve
//!   [`shock_position`] / [`shock_speed`],
//! - the exact Cole–Hopf solution [`u_exact`] assembled from scaled
//!   quadratures of the heat-kernel integrals ([`psi_parts`]),
//! - the saddle data of the left integral ([`critical_points`], [`f_minus`])
//!   feeding both the quadrature shifts and the asymptotic series, and
//! - the two-scale leading term [`h0_leading`] of the solution near the
//!   shock, valid in the domain described by [`OmegaAlphaDomain`].

mod cole_hopf;
mod inner;
mod limit;

pub use cole_hopf::{
    psi_minus_b_leading, psi_minus_s_series, psi_minus_split, psi_parts, psi_plus, u_exact,
    u_exact_via_log_derivative, PsiParts,
};
pub use inner::{h0_leading, in_omega_alpha, sigma_in_omega_alpha};
pub use limit::{
    critical_points, f_minus, f_minus_dy, r_and_k, shock_position, shock_speed, u0_limit,
};

use crate::specfun::SpecfunError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum BurgersError {
    #[error("domain error in {what}: {value} not in {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// `x` sits exactly on the shock; both one-sided limit values are given.
    #[error("point lies on the shock curve; one-sided values {left} / {right}")]
    AmbiguousShockPoint { left: f64, right: f64 },
    /// The saddle-point equation has no real roots (beyond the caustic).
    #[error("no real critical points at x={x}, t={t} (discriminant {discriminant})")]
    NoRealCriticalPoints { x: f64, t: f64, discriminant: f64 },
    #[error(transparent)]
    Quadrature(#[from] SpecfunError),
}

/// Problem parameters: quadratic coefficient `a > 0` of the datum and the
/// dissipation `eps > 0`. The initial time is fixed at `t = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurgersSetup {
    a: f64,
    eps: f64,
}

impl BurgersSetup {
    pub fn new(a: f64, eps: f64) -> Result<Self, BurgersError> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(BurgersError::Domain {
                what: "BurgersSetup.a",
                value: a,
                expected: "(0, inf)",
            });
        }
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(BurgersError::Domain {
                what: "BurgersSetup.eps",
                value: eps,
                expected: "(0, inf)",
            });
        }
        Ok(Self { a, eps })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Initial datum `-(x + a x²) Θ(-x)`.
    pub fn initial_datum(&self, x: f64) -> f64 {
        if x < 0.0 {
            -(x + self.a * x * x)
        } else {
            0.0
        }
    }
}

/// Stretched coordinates near the shock: `sigma = (x - s(t))/eps` resolves
/// the viscous layer, `zeta = x / sqrt(eps)` the second scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerCoords {
    pub sigma: f64,
    pub zeta: f64,
    pub t: f64,
}

impl InnerCoords {
    /// Coordinates of the physical point `(x, t)`.
    pub fn from_physical(x: f64, t: f64, setup: &BurgersSetup) -> Result<Self, BurgersError> {
        let s = shock_position(t, setup)?;
        Ok(Self {
            sigma: (x - s) / setup.eps(),
            zeta: x / setup.eps().sqrt(),
            t,
        })
    }

    /// The physical abscissa this point corresponds to.
    pub fn x(&self, setup: &BurgersSetup) -> Result<f64, BurgersError> {
        Ok(shock_position(self.t, setup)? + setup.eps() * self.sigma)
    }
}

/// Saddle data of the left heat-kernel integral: the two stationary points
/// of the exponent in `y` and `R = sqrt(t² - 4 a x (1 + t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoints {
    pub y_minus: f64,
    pub y_plus: f64,
    pub r: f64,
}

/// Validity domain of the two-scale expansion:
/// `|sigma| < t² eps^(4 alpha - 1)` and `eps^(1 - alpha) < t³ < t_max³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaAlphaDomain {
    pub alpha: f64,
    pub t_max: f64,
}

impl OmegaAlphaDomain {
    pub fn new(alpha: f64, t_max: f64) -> Result<Self, BurgersError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(BurgersError::Domain {
                what: "OmegaAlphaDomain.alpha",
                value: alpha,
                expected: "(0, 1)",
            });
        }
        if !(t_max > 0.0) {
            return Err(BurgersError::Domain {
                what: "OmegaAlphaDomain.t_max",
                value: t_max,
                expected: "(0, inf)",
            });
        }
        Ok(Self { alpha, t_max })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setup_validates_parameters() {
        assert!(BurgersSetup::new(1.0, 1e-3).is_ok());
        assert!(BurgersSetup::new(0.0, 1e-3).is_err());
        assert!(BurgersSetup::new(1.0, 0.0).is_err());
        assert!(BurgersSetup::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn datum_is_continuous_with_kinked_derivative() {
        let setup = BurgersSetup::new(2.0, 1.0).unwrap();
        assert_eq!(setup.initial_datum(0.0), 0.0);
        assert_eq!(setup.initial_datum(1e-9), 0.0);
        // left slope -(1 + 2ax) -> -1 at 0^-
        let h = 1e-7;
        let slope = (setup.initial_datum(0.0) - setup.initial_datum(-h)) / h;
        assert!((slope + 1.0).abs() < 1e-6);
    }

    #[test]
    fn inner_coords_are_deterministic_in_x_t() {
        let setup = BurgersSetup::new(1.0, 1e-3).unwrap();
        let c = InnerCoords::from_physical(0.05, 0.5, &setup).unwrap();
        assert!((c.x(&setup).unwrap() - 0.05).abs() < 1e-15);
        assert!((c.zeta - 0.05 / 1e-3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn omega_alpha_rejects_bad_parameters() {
        assert!(OmegaAlphaDomain::new(0.0, 1.0).is_err());
        assert!(OmegaAlphaDomain::new(1.0, 1.0).is_err());
        assert!(OmegaAlphaDomain::new(0.3, 0.0).is_err());
        assert!(OmegaAlphaDomain::new(0.3, 2.0).is_ok());
    }
}
