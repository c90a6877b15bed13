//! Two-scale leading term of the solution near the shock and the validity
//! domain predicate.

use super::limit::{r_and_k, shock_position, shock_speed};
use super::{BurgersError, BurgersSetup, InnerCoords, OmegaAlphaDomain};
use crate::specfun::gauss_tail_over_z2;
use std::f64::consts::PI;

/// Leading term of the two-scale expansion,
///
/// ```text
/// h0 = 2 mu(t) / (1 + K(t) e^{mu sigma} [1 + (1/(2 sqrt(pi))) T(-zeta/(2 sqrt(1+t)))])
/// ```
///
/// where `T` is the Gaussian tail integral with `1/z²` weight. The bracket
/// requires `zeta > 0`; near the shock `x ≈ s(t) > 0`, so this holds wherever
/// the expansion applies.
pub fn h0_leading(coords: &InnerCoords, setup: &BurgersSetup) -> Result<f64, BurgersError> {
    let t = coords.t;
    if !(t > 0.0) {
        return Err(BurgersError::Domain {
            what: "h0_leading.t",
            value: t,
            expected: "(0, inf)",
        });
    }
    if !(coords.zeta > 0.0) {
        return Err(BurgersError::Domain {
            what: "h0_leading.zeta",
            value: coords.zeta,
            expected: "(0, inf)",
        });
    }
    let mu = shock_speed(t, setup)?;
    let (_, k) = r_and_k(t)?;
    let tail = gauss_tail_over_z2(-coords.zeta / (2.0 * (1.0 + t).sqrt()))?;
    let bracket = 1.0 + tail / (2.0 * PI.sqrt());
    // exp may under/overflow; the quotient limits (2 mu resp. 0) are correct
    Ok(2.0 * mu / (1.0 + k * (mu * coords.sigma).exp() * bracket))
}

/// Membership in the validity domain:
/// `|sigma| < t² eps^(4 alpha - 1)` and `eps^(1-alpha) < t³ < t_max³`
/// (all inequalities strict).
pub fn in_omega_alpha(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
    dom: &OmegaAlphaDomain,
) -> Result<bool, BurgersError> {
    if !time_window_contains(t, setup, dom) {
        return Ok(false);
    }
    let sigma = (x - shock_position(t, setup)?) / setup.eps();
    Ok(sigma_bound_contains(sigma, t, setup, dom))
}

/// The same predicate with the stretched coordinate given directly.
pub fn sigma_in_omega_alpha(
    sigma: f64,
    t: f64,
    setup: &BurgersSetup,
    dom: &OmegaAlphaDomain,
) -> bool {
    time_window_contains(t, setup, dom) && sigma_bound_contains(sigma, t, setup, dom)
}

fn time_window_contains(t: f64, setup: &BurgersSetup, dom: &OmegaAlphaDomain) -> bool {
    let t3 = t * t * t;
    t3 > setup.eps().powf(1.0 - dom.alpha) && t3 < dom.t_max.powi(3)
}

fn sigma_bound_contains(sigma: f64, t: f64, setup: &BurgersSetup, dom: &OmegaAlphaDomain) -> bool {
    sigma.abs() < t * t * setup.eps().powf(4.0 * dom.alpha - 1.0)
}
