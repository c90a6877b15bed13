//! Complete elliptic integrals and the Jacobi `dn` function.
//!
//! `K` and `E` use the arithmetic–geometric mean (DLMF 19.8, Abramowitz &
//! Stegun 17.6); `dn` uses the descending Landen transformation with the
//! usual backward phase recurrence (A&S 16.4). All take the modulus `σ`
//! (integrands contain `σ² sin²v`), not the parameter `m = σ²`.

use super::{EllipticModulus, SpecfunError};
use std::f64::consts::{FRAC_PI_2, PI};

/// AGM stops once the means agree to a few machine epsilons.
const AGM_TOL: f64 = 4.0 * f64::EPSILON;
const AGM_MAX_ITER: usize = 40;

/// Complete elliptic integral of the first kind,
/// `K(σ) = ∫_0^{π/2} dv / sqrt(1 - σ² sin²v)`.
///
/// `K(σ) = π / (2 agm(1, σ'))` with `σ' = sqrt(1-σ²)`; quadratic
/// convergence gives machine precision in at most ~10 iterations.
pub fn complete_elliptic_k(sigma: EllipticModulus) -> Result<f64, SpecfunError> {
    if sigma.sigma() >= 1.0 {
        return Err(SpecfunError::Divergence("complete_elliptic_k"));
    }
    let mut a = 1.0f64;
    let mut b = sigma.m_complement().sqrt();
    for _ in 0..AGM_MAX_ITER {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
    }
    Ok(PI / (2.0 * a))
}

/// Complete elliptic integral of the second kind,
/// `E(σ) = ∫_0^{π/2} sqrt(1 - σ² sin²v) dv`.
///
/// Uses the AGM together with the sum `E = K (1 - Σ 2^{n-1} c_n²)`.
pub fn complete_elliptic_e(sigma: EllipticModulus) -> Result<f64, SpecfunError> {
    if sigma.sigma() == 0.0 {
        return Ok(FRAC_PI_2);
    }
    if sigma.sigma() == 1.0 {
        return Ok(1.0);
    }
    let mut a = 1.0f64;
    let mut b = sigma.m_complement().sqrt();
    let mut c = sigma.sigma();
    let mut sum = 0.5 * c * c;
    let mut pow2 = 0.5;
    for _ in 0..AGM_MAX_ITER {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        pow2 *= 2.0;
        sum += pow2 * c * c;
        a = an;
        b = bn;
        if c.abs() <= AGM_TOL * a {
            break;
        }
    }
    let k = PI / (2.0 * a);
    Ok(k * (1.0 - sum))
}

/// Jacobi `dn(u, σ)` in the modulus convention:
/// `dn = sqrt(1 - σ² sin²φ(u))` where `u = ∫_0^{φ(u)} dv / sqrt(1 - σ² sin²v)`.
///
/// The argument is first reduced modulo the real period `2K(σ)`, then the
/// descending Landen/AGM backward recurrence produces the amplitude φ(u).
/// Near the degenerate edge (`1 - σ < 1e-6`) the period diverges and
/// `dn = sech(u)` is used instead; at `σ = 0` the function is identically 1.
pub fn jacobi_dn(u: f64, sigma: EllipticModulus) -> f64 {
    let s = sigma.sigma();
    if s == 0.0 {
        return 1.0;
    }
    if 1.0 - s < 1e-6 {
        return 1.0 / u.cosh();
    }
    let m = sigma.m();
    let mc = sigma.m_complement();

    // period reduction keeps the back-recurrence phases small
    let k = complete_elliptic_k(sigma).expect("sigma < 1 here");
    let period = 2.0 * k;
    let u_red = u - period * (u / period).round();

    // AGM chain, storing the ratios needed by the phase recurrence
    let mut a = 1.0f64;
    let mut b = mc.sqrt();
    let mut ratios = [0.0f64; AGM_MAX_ITER];
    let mut n = 0;
    while n < AGM_MAX_ITER {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
        ratios[n] = c / a; // c_{n+1} / a_{n+1}
        n += 1;
        if c.abs() <= AGM_TOL * a {
            break;
        }
    }

    let mut phi = (1u64 << n) as f64 * a * u_red;
    for i in (0..n).rev() {
        phi = 0.5 * (phi + (ratios[i] * phi.sin()).clamp(-1.0, 1.0).asin());
    }

    let cn = phi.cos();
    // dn² = 1 - m sin²φ = (1-m) + m cos²φ, free of cancellation near the minimum
    (mc + m * cn * cn).sqrt()
}
