//! Exact solution via the Cole–Hopf transform.
//!
//! The solution is the quotient `u = -Ψ⁰ / (Ψ⁻ + Ψ⁺)` of three heat-kernel
//! integrals: `Ψ⁻` and `Ψ⁰` integrate `exp(F⁻/eps)` (amplitudes `1` and
//! `y + a y²`) over the left half-line, `Ψ⁺` is the Gaussian integral over
//! the right half-line, available in closed form for `x > 0`. All three are
//! kept as [`ScaledIntegral`]s because `F⁻/eps` reaches magnitudes far
//! beyond floating-point range away from the shock.

use super::limit::{critical_points, f_minus};
use super::{BurgersError, BurgersSetup};
use crate::specfun::{
    gauss_tail_over_z2, laplace_quadrature_shifted, QuadratureSpec, ScaledIntegral,
};
use std::f64::consts::PI;

/// The three Cole–Hopf integrals at one point.
#[derive(Debug, Clone)]
pub struct PsiParts {
    pub psi_minus: ScaledIntegral,
    pub psi_plus: ScaledIntegral,
    pub psi_zero: ScaledIntegral,
}

/// Exponent shift (the maximum of `F⁻` on `(-inf, 0]`) and interior seed
/// points for the adaptive quadrature.
fn left_shift_and_seeds(x: f64, t: f64, setup: &BurgersSetup) -> (f64, Vec<f64>) {
    let f0 = f_minus(0.0, x, t, setup);
    match critical_points(x, t, setup) {
        Ok(cp) => {
            let mut shift = f0;
            if cp.y_minus < 0.0 {
                shift = shift.max(f_minus(cp.y_minus, x, t, setup));
            }
            let seeds: Vec<f64> = [cp.y_minus, cp.y_plus]
                .into_iter()
                .filter(|y| *y < 0.0)
                .collect();
            (shift, seeds)
        }
        // beyond the caustic the exponent increases monotonically to y = 0
        Err(_) => (f0, Vec::new()),
    }
}

/// `Ψ⁻`, `Ψ⁺`, `Ψ⁰` with the common normalization in which
/// `u = -Ψ⁰ / (Ψ⁻ + Ψ⁺)` and `Ψ⁺ -> 2 sqrt(pi eps (1+t))` as
/// `x/sqrt(eps) -> inf`.
pub fn psi_parts(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
    spec: &QuadratureSpec,
) -> Result<PsiParts, BurgersError> {
    let eps = setup.eps();
    let a = setup.a();
    let (shift, seeds) = left_shift_and_seeds(x, t, setup);

    let exponent = |y: f64| f_minus(y, x, t, setup);
    let psi_minus = laplace_quadrature_shifted(
        &exponent,
        &|_| 1.0,
        (f64::NEG_INFINITY, 0.0),
        eps,
        shift,
        &seeds,
        spec,
    )?
    .value;
    let psi_zero = laplace_quadrature_shifted(
        &exponent,
        &|y: f64| y + a * y * y,
        (f64::NEG_INFINITY, 0.0),
        eps,
        shift,
        &seeds,
        spec,
    )?
    .value;
    let psi_plus = psi_plus(x, t, setup, spec)?;

    Ok(PsiParts {
        psi_minus,
        psi_plus,
        psi_zero,
    })
}

/// Right half-line integral `Ψ⁺ = ∫_0^∞ exp(-(x-y)²/(4 eps (1+t))) dy`.
///
/// For `x > 0.01 sqrt(eps)` the closed form
/// `2 sqrt(eps pi (1+t)) - (2 eps (1+t)/x) e^{-ζ²/(4(1+t))}
///  + sqrt(eps(1+t)) ∫_{-inf}^{-ζ/(2 sqrt(1+t))} e^{-z²}/z² dz`
/// with `ζ = x/sqrt(eps)` is used; it is exact but divides by `x`, so close
/// to and left of the origin the defining integral is evaluated directly.
pub fn psi_plus(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
    spec: &QuadratureSpec,
) -> Result<ScaledIntegral, BurgersError> {
    let eps = setup.eps();
    let op = 1.0 + t;
    if x > 0.01 * eps.sqrt() {
        let zeta = x / eps.sqrt();
        let gauss = (-zeta * zeta / (4.0 * op)).exp();
        let w = -zeta / (2.0 * op.sqrt());
        let tail = gauss_tail_over_z2(w)?;
        let value = 2.0 * (eps * PI * op).sqrt() - 2.0 * eps * op / x * gauss
            + (eps * op).sqrt() * tail;
        return Ok(ScaledIntegral::from_value(value));
    }
    // defining Gaussian integral; its exponent peaks at y = max(x, 0)
    let exponent = move |y: f64| {
        let d = x - y;
        -d * d / (4.0 * op)
    };
    let shift = if x > 0.0 { 0.0 } else { -x * x / (4.0 * op) };
    let seeds: Vec<f64> = if x > 0.0 { vec![x] } else { Vec::new() };
    Ok(laplace_quadrature_shifted(
        &exponent,
        &|_| 1.0,
        (0.0, f64::INFINITY),
        eps,
        shift,
        &seeds,
        spec,
    )?
    .value)
}

/// Split of the left integral at the interior minimum `y⁺` of the exponent:
/// the smooth (saddle) part over `(-inf, y⁺]` and the boundary part over
/// `[y⁺, 0]`. Requires `y⁺ < 0`, which holds right of the origin and below
/// the caustic.
pub fn psi_minus_split(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
    spec: &QuadratureSpec,
) -> Result<(ScaledIntegral, ScaledIntegral), BurgersError> {
    let eps = setup.eps();
    let cp = critical_points(x, t, setup)?;
    if !(cp.y_plus < 0.0) {
        return Err(BurgersError::Domain {
            what: "psi_minus_split: interior minimum y+ must lie left of 0",
            value: cp.y_plus,
            expected: "(-inf, 0)",
        });
    }
    let exponent = |y: f64| f_minus(y, x, t, setup);
    let smooth = laplace_quadrature_shifted(
        &exponent,
        &|_| 1.0,
        (f64::NEG_INFINITY, cp.y_plus),
        eps,
        f_minus(cp.y_minus, x, t, setup),
        &[cp.y_minus],
        spec,
    )?
    .value;
    // on [y+, 0] the exponent rises monotonically to its boundary maximum
    let boundary = laplace_quadrature_shifted(
        &exponent,
        &|_| 1.0,
        (cp.y_plus, 0.0),
        eps,
        f_minus(0.0, x, t, setup),
        &[],
        spec,
    )?
    .value;
    Ok((smooth, boundary))
}

/// Laplace series of the saddle part of `Ψ⁻`, truncated after the two
/// printed coefficients:
/// `sqrt(2 pi eps) e^{F⁻(y⁻)/eps} (H + eps * (5/24) a² H⁷)` with
/// `H = (2(1+t)/R)^{1/2}`. The `5/24` is the classical second-order
/// Laplace constant for a cubic exponent.
pub fn psi_minus_s_series(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
) -> Result<ScaledIntegral, BurgersError> {
    let eps = setup.eps();
    let a = setup.a();
    let cp = critical_points(x, t, setup)?;
    let h = (2.0 * (1.0 + t) / cp.r).sqrt();
    let mantissa = (2.0 * PI * eps).sqrt() * (h + eps * (5.0 / 24.0) * a * a * h.powi(7));
    Ok(ScaledIntegral::new(
        mantissa,
        f_minus(cp.y_minus, x, t, setup) / eps,
    ))
}

/// Leading term of the boundary part of `Ψ⁻`:
/// `(2 eps (1+t)/x) e^{-ζ²/(4(1+t))}` (boundary-layer coefficient 2).
pub fn psi_minus_b_leading(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
) -> Result<ScaledIntegral, BurgersError> {
    if !(x > 0.0) {
        return Err(BurgersError::Domain {
            what: "psi_minus_b_leading.x",
            value: x,
            expected: "(0, inf)",
        });
    }
    let eps = setup.eps();
    let op = 1.0 + t;
    Ok(ScaledIntegral::new(
        2.0 * eps * op / x,
        -x * x / (4.0 * eps * op),
    ))
}

/// Exact solution `u = -Ψ⁰ / (Ψ⁻ + Ψ⁺)`; the quotient cancels the scales.
pub fn u_exact(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
    spec: &QuadratureSpec,
) -> Result<f64, BurgersError> {
    if !(t > -1.0) {
        return Err(BurgersError::Domain {
            what: "u_exact.t",
            value: t,
            expected: "(-1, inf)",
        });
    }
    let parts = psi_parts(x, t, setup, spec)?;
    let denom = parts.psi_minus.add(&parts.psi_plus);
    Ok(-parts.psi_zero.div(&denom).value())
}

/// Independent route to `u` through the logarithmic derivative of the full
/// heat-kernel integral: `u = -2 eps Ψ_x / Ψ` evaluated by quadrature of
/// the `(x-y)`-weighted integrands on both half-lines. Used to cross-check
/// the quotient form.
pub fn u_exact_via_log_derivative(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
    spec: &QuadratureSpec,
) -> Result<f64, BurgersError> {
    let eps = setup.eps();
    let op = 1.0 + t;
    let (shift, seeds) = left_shift_and_seeds(x, t, setup);

    let weighted_left = laplace_quadrature_shifted(
        &|y: f64| f_minus(y, x, t, setup),
        &|y: f64| (x - y) / (2.0 * op),
        (f64::NEG_INFINITY, 0.0),
        eps,
        shift,
        &seeds,
        spec,
    )?
    .value;

    let right_exponent = move |y: f64| {
        let d = x - y;
        -d * d / (4.0 * op)
    };
    let right_shift = if x > 0.0 { 0.0 } else { -x * x / (4.0 * op) };
    let right_seeds: Vec<f64> = if x > 0.0 { vec![x] } else { Vec::new() };
    let weighted_right = laplace_quadrature_shifted(
        &right_exponent,
        &|y: f64| (x - y) / (2.0 * op),
        (0.0, f64::INFINITY),
        eps,
        right_shift,
        &right_seeds,
        spec,
    )?
    .value;

    let plain_left = laplace_quadrature_shifted(
        &|y: f64| f_minus(y, x, t, setup),
        &|_| 1.0,
        (f64::NEG_INFINITY, 0.0),
        eps,
        shift,
        &seeds,
        spec,
    )?
    .value;
    let plain_right = laplace_quadrature_shifted(
        &right_exponent,
        &|_| 1.0,
        (0.0, f64::INFINITY),
        eps,
        right_shift,
        &right_seeds,
        spec,
    )?
    .value;

    let numerator = weighted_left.add(&weighted_right).scaled_by(2.0);
    let denominator = plain_left.add(&plain_right);
    Ok(numerator.div(&denominator).value())
}
