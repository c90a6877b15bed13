//! Quasilinear parabolic equation `u_t + phi(u)_x = eps u_xx` with Riemann
//! step data: Rankine–Hugoniot constants, the viscous traveling-wave inner
//! solution, the linearized profile operator `L3` with its solvability
//! functional, and the generic correction-solving step.
//!
//! The inner solution in the stretched variable `sigma = (x - ct)/eps` is
//! `v0(sigma) = Lambda(sigma + kappa)`, where `Lambda` is defined implicitly
//! by `∫_{mid}^{Lambda} dv/(phi(v) - c v - b) = sigma` and `kappa` is a
//! matching constant left to the caller. Corrections at every order solve
//! `L3 v = F` with prescribed polynomial tails; [`solvability_functional`]
//! evaluates the Fredholm-type condition and [`solve_l3`] produces one
//! solution, unique up to the homogeneous direction `v0'`.

mod l3;
mod profile;

pub use l3::{apply_l3, apply_l3_at, kappa_update, solvability_functional, solve_l3, SolveGrid};
pub use profile::{rankine_hugoniot, traveling_wave, TravelingWaveProfile};

use crate::specfun::SpecfunError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParabolicError {
    #[error("domain error in {what}: {value} not in {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("flux is not strictly convex on the state interval: phi''({at}) = {value}")]
    NonConvexFlux { at: f64, value: f64 },
    #[error("states are degenerate: nu_minus = nu_plus = {0}")]
    DegenerateStates(f64),
    #[error("profile inversion failed to bracket (convexity precondition violated?): {0}")]
    Bracketing(&'static str),
    #[error("right-hand side does not decay at sigma = {at}: |value| = {value}")]
    NonDecayingTail { at: f64, value: f64 },
    #[error("solvability condition violated: functional = {functional} exceeds {tol}")]
    NotSolvable { functional: f64, tol: f64 },
    #[error(transparent)]
    Quadrature(#[from] SpecfunError),
}

/// Convex flux with its first two derivatives.
pub struct FluxModel {
    phi: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    dphi: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    d2phi: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl FluxModel {
    pub fn new(
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dphi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            phi: Box::new(phi),
            dphi: Box::new(dphi),
            d2phi: Box::new(d2phi),
        }
    }

    /// The Burgers flux `u²/2`.
    pub fn quadratic() -> Self {
        Self::new(|u| 0.5 * u * u, |u| u, |_| 1.0)
    }

    /// Polynomial flux `sum c_k u^k` from its coefficients (constant first).
    pub fn polynomial(coeffs: &[f64]) -> Self {
        fn horner(c: &[f64], u: f64) -> f64 {
            c.iter().rev().fold(0.0, |acc, ck| acc * u + ck)
        }
        fn derive(c: &[f64]) -> Vec<f64> {
            c.iter()
                .enumerate()
                .skip(1)
                .map(|(k, ck)| k as f64 * ck)
                .collect()
        }
        let c0: Vec<f64> = coeffs.to_vec();
        let c1 = derive(&c0);
        let c2 = derive(&c1);
        Self::new(
            move |u| horner(&c0, u),
            move |u| horner(&c1, u),
            move |u| horner(&c2, u),
        )
    }

    pub fn phi(&self, u: f64) -> f64 {
        (self.phi)(u)
    }

    pub fn dphi(&self, u: f64) -> f64 {
        (self.dphi)(u)
    }

    pub fn d2phi(&self, u: f64) -> f64 {
        (self.d2phi)(u)
    }

    /// Check `phi'' > 0` on `[lo, hi]` by dense sampling; reports the first
    /// failing point.
    pub fn check_convexity(&self, lo: f64, hi: f64) -> Result<(), ParabolicError> {
        let n = 1000;
        for i in 0..=n {
            let u = lo + (hi - lo) * i as f64 / n as f64;
            let v = self.d2phi(u);
            if !(v > 0.0) {
                return Err(ParabolicError::NonConvexFlux { at: u, value: v });
            }
        }
        Ok(())
    }
}

/// Riemann states; the shock branch requires `nu_minus > nu_plus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepStates {
    nu_minus: f64,
    nu_plus: f64,
}

impl StepStates {
    pub fn new(nu_minus: f64, nu_plus: f64) -> Result<Self, ParabolicError> {
        if !(nu_minus > nu_plus) {
            return Err(ParabolicError::Domain {
                what: "StepStates",
                value: nu_minus - nu_plus,
                expected: "nu_minus > nu_plus",
            });
        }
        Ok(Self { nu_minus, nu_plus })
    }

    pub fn nu_minus(&self) -> f64 {
        self.nu_minus
    }

    pub fn nu_plus(&self) -> f64 {
        self.nu_plus
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.nu_minus + self.nu_plus)
    }

    pub fn jump(&self) -> f64 {
        self.nu_minus - self.nu_plus
    }
}

/// Shock speed `c` and affine constant `b` making `phi(v) - c v - b` vanish
/// at both states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankineHugoniot {
    pub c: f64,
    pub b: f64,
}
