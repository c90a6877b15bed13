//! Numerical library for the formation of shock and compression waves in
//! nonlinear wave models with small dissipation or dispersion.
//!
//! The crate has three asymptotic front-ends and two validation back-ends:
//!
//! - [`burgers`] — exact Cole–Hopf solution of a dissipative Burgers problem
//!   with an initial weak discontinuity, the inviscid limit and its shock
//!   curve, and the two-scale leading term of the solution near the shock.
//! - [`parabolic`] — traveling-wave inner solution of a quasilinear parabolic
//!   equation with Riemann step data, the linearized profile operator, its
//!   solvability functional, and the generic correction-solving step.
//! - [`kdv`] — Whitham modulation table for the step problem of the small
//!   dispersion KdV equation and the explicit dispersive-shock-wave
//!   approximation for smoothed steps.
//! - [`specfun`] — elliptic integrals, Jacobi `dn`, the error function, and
//!   overflow-safe quadrature of `amplitude * exp(exponent / eps)` used by
//!   everything above.
//! - [`reference`] — direct pseudospectral time integration of the Burgers
//!   and KdV equations, used as an independent oracle for the asymptotic
//!   formulas.
//!
//! All public types are immutable after construction and every operation is
//! pure, so values can be shared freely across threads.

pub mod burgers;
pub mod grid;
pub mod kdv;
pub mod parabolic;
pub mod reference;
pub mod specfun;

#[cfg(test)]
pub(crate) mod testkit;
