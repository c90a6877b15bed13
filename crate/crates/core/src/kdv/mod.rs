//! Dispersive compression wave of the small-dispersion KdV equation
//! `u_t + u u_x + eps u_xxx = 0` with a smoothed-step initial profile
//! `u(x, 0) = Lambda(x / rho)`.
//!
//! Three layers:
//!
//! - [`modulation_sigma`] / [`GPModulationTable`] solve the Whitham
//!   modulation relation of the sharp-step (Gurevich–Pitaevskii) problem:
//!   given the self-similar variable `y = x/(at) ∈ [-1, 2/3]`, the elliptic
//!   modulus `σ(y)` satisfies
//!   `1 + σ² - 2σ²(1-σ²)K(σ) / (E(σ) - (1-σ²)K(σ)) = 3y`,
//!   and the phase density is `ω(y) = (y - (1+σ²)/3)/sqrt(6)`.
//! - [`gp_interior_profile`] / [`dsw_approximation`] evaluate the explicit
//!   oscillatory-fan approximation built from `dn²` riding on the modulation
//!   data, convolved with the smoothed step.
//! - [`renormalized_u0`] / [`green_property_check`] implement the general
//!   renormalized convolution `U0 = (1/ΔΛ) ∫ Z((x-ρs)/√eps, t/√eps) Λ'(s) ds`
//!   for an arbitrary inner solution `Z` and the Green-function property of
//!   `∂Z/∂η`.

mod dsw;
mod modulation;

pub use dsw::{dsw_approximation, gp_interior_profile, green_property_check, renormalized_u0};
pub use modulation::{build_modulation_table, modulation_sigma, GPModulationTable};

use crate::specfun::SpecfunError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum KdvError {
    #[error("domain error in {what}: {value} not in {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error(transparent)]
    Quadrature(#[from] SpecfunError),
}

/// Parameters of the dispersive-shock problem: left state `a > 0` (right
/// state 0), dispersion `eps`, initial smoothing width `rho`, and the
/// derived ratio `mu = rho / sqrt(eps)`. The asymptotics are built for
/// `mu -> 0`; larger values are allowed (accuracy degrades, nothing breaks).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DSWParams {
    a: f64,
    eps: f64,
    rho: f64,
    mu: f64,
}

impl DSWParams {
    pub fn new(a: f64, eps: f64, rho: f64) -> Result<Self, KdvError> {
        for (what, v) in [("DSWParams.a", a), ("DSWParams.eps", eps), ("DSWParams.rho", rho)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(KdvError::Domain {
                    what,
                    value: v,
                    expected: "(0, inf)",
                });
            }
        }
        Ok(Self {
            a,
            eps,
            rho,
            mu: rho / eps.sqrt(),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Smooth monotone initial profile with its derivative and limits. For the
/// default left state `a` and right state 0 use [`StepProfile::tanh_step`].
pub struct StepProfile {
    lambda: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    dlambda: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    limit_minus: f64,
    limit_plus: f64,
    /// `|Lambda'(s)| <= deriv_bound * exp(-decay_rate |s|)`
    decay_rate: f64,
    deriv_bound: f64,
}

impl StepProfile {
    pub fn new(
        lambda: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dlambda: impl Fn(f64) -> f64 + Send + Sync + 'static,
        limit_minus: f64,
        limit_plus: f64,
        decay_rate: f64,
        deriv_bound: f64,
    ) -> Result<Self, KdvError> {
        if !(decay_rate > 0.0) {
            return Err(KdvError::Domain {
                what: "StepProfile.decay_rate",
                value: decay_rate,
                expected: "(0, inf)",
            });
        }
        let p = Self {
            lambda: Box::new(lambda),
            dlambda: Box::new(dlambda),
            limit_minus,
            limit_plus,
            decay_rate,
            deriv_bound,
        };
        p.validate()?;
        Ok(p)
    }

    /// `Lambda(s) = (a/2)(1 - tanh(s/2))`: limits `(a, 0)`, derivative
    /// `-(a/4) sech²(s/2)` bounded by `a e^{-|s|}`.
    pub fn tanh_step(a: f64) -> Result<Self, KdvError> {
        if !(a > 0.0) {
            return Err(KdvError::Domain {
                what: "StepProfile.tanh_step.a",
                value: a,
                expected: "(0, inf)",
            });
        }
        Self::new(
            move |s| 0.5 * a * (1.0 - (0.5 * s).tanh()),
            move |s| {
                let c = (0.5 * s).cosh();
                -0.25 * a / (c * c)
            },
            a,
            0.0,
            1.0,
            a,
        )
    }

    /// Derivative must integrate to the total jump (checked by quadrature),
    /// and the declared decay bound must actually dominate the derivative.
    fn validate(&self) -> Result<(), KdvError> {
        let spec = crate::specfun::QuadratureSpec::default();
        let w = 40.0 / self.decay_rate;
        let (total, _) = crate::specfun::integrate_adaptive_split(
            &|s: f64| self.dlambda(s),
            &[-w, -1.0, 1.0, w],
            &spec,
        )?;
        let jump = self.limit_plus - self.limit_minus;
        if (total - jump).abs() > 1e-10 * (1.0 + jump.abs()) {
            return Err(KdvError::Domain {
                what: "StepProfile: derivative must integrate to the jump",
                value: total,
                expected: "limit_plus - limit_minus",
            });
        }
        for i in 0..=100 {
            let s = -w + 2.0 * w * i as f64 / 100.0;
            // slack of a few ulps: the bound may be attained exactly
            if self.dlambda(s).abs()
                > self.deriv_bound * (-self.decay_rate * s.abs()).exp() * (1.0 + 1e-9) + 1e-300
            {
                return Err(KdvError::Domain {
                    what: "StepProfile: declared derivative bound violated",
                    value: s,
                    expected: "|dlambda| <= bound * exp(-rate |s|)",
                });
            }
        }
        Ok(())
    }

    pub fn lambda(&self, s: f64) -> f64 {
        (self.lambda)(s)
    }

    pub fn dlambda(&self, s: f64) -> f64 {
        (self.dlambda)(s)
    }

    pub fn limit_minus(&self) -> f64 {
        self.limit_minus
    }

    pub fn limit_plus(&self) -> f64 {
        self.limit_plus
    }

    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    pub fn deriv_bound(&self) -> f64 {
        self.deriv_bound
    }

    /// Bound on `∫_{|s| > w} |Lambda'|` from the declared decay.
    pub fn tail_mass_bound(&self, w: f64) -> f64 {
        2.0 * self.deriv_bound * (-self.decay_rate * w).exp() / self.decay_rate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_recompute_mu() {
        let p = DSWParams::new(1.0, 2e-4, 0.02).unwrap();
        assert!((p.mu() - 0.02 / 2e-4f64.sqrt()).abs() < 1e-14);
        assert!(DSWParams::new(0.0, 1.0, 1.0).is_err());
        assert!(DSWParams::new(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn tanh_step_has_consistent_limits_and_derivative() {
        let p = StepProfile::tanh_step(2.0).unwrap();
        assert!((p.lambda(-60.0) - 2.0).abs() < 1e-12);
        assert!(p.lambda(60.0).abs() < 1e-12);
        assert!((p.lambda(0.0) - 1.0).abs() < 1e-15);
        // derivative by finite differences
        let h = 1e-6;
        for &s in &[-3.0, 0.0, 1.7] {
            let fd = (p.lambda(s + h) - p.lambda(s - h)) / (2.0 * h);
            assert!((fd - p.dlambda(s)).abs() < 1e-9);
        }
    }

    #[test]
    fn inconsistent_profile_is_rejected() {
        // derivative integrates to the wrong jump
        let r = StepProfile::new(
            |s| 1.0 / (1.0 + s.exp()),
            |s| {
                let e = s.exp();
                -0.5 * e / ((1.0 + e) * (1.0 + e))
            },
            1.0,
            0.0,
            0.5,
            1.0,
        );
        assert!(r.is_err());
    }
}
