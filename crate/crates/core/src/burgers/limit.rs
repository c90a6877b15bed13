//! Inviscid limit: characteristics solution, shock curve and the saddle
//! data of the Cole–Hopf exponent.

use super::{BurgersError, BurgersSetup, CriticalPoints};

/// Limit (`eps -> 0`) solution. Left of the discontinuity
/// `x = s(t) Θ(t)` the characteristics give
/// `u0 = (2a(1+t)x + t + sqrt(t² - 4a(1+t)x)) / (2a(1+t)²)`, right of it
/// the solution vanishes. Exactly on the shock (`t > 0`) both one-sided
/// values are returned as an error, since the formula is stated with strict
/// inequalities.
pub fn u0_limit(x: f64, t: f64, setup: &BurgersSetup) -> Result<f64, BurgersError> {
    if t < -1.0 {
        return Err(BurgersError::Domain {
            what: "u0_limit.t",
            value: t,
            expected: "[-1, inf)",
        });
    }
    let boundary = if t > 0.0 { shock_position(t, setup)? } else { 0.0 };
    if x > boundary {
        return Ok(0.0);
    }
    if x == boundary {
        if t > 0.0 {
            return Err(BurgersError::AmbiguousShockPoint {
                left: left_branch(x, t, setup),
                right: 0.0,
            });
        }
        // weak discontinuity only: both branches agree at x = 0, t <= 0
        return Ok(0.0);
    }
    Ok(left_branch(x, t, setup))
}

fn left_branch(x: f64, t: f64, setup: &BurgersSetup) -> f64 {
    let a = setup.a();
    let op = 1.0 + t;
    let disc = t * t - 4.0 * a * x * op;
    debug_assert!(disc >= 0.0, "left branch beyond the caustic");
    (2.0 * a * op * x + t + disc.max(0.0).sqrt()) / (2.0 * a * op * op)
}

/// Shock curve `s(t) = ((3t+4)^{3/2} - 9t - 8) / (9a(1+t))` for `t >= 0`.
///
/// With `w = sqrt(3t+4)` the numerator factors as `(w+1)(w-2)²` and
/// `w - 2 = 3t/(w+2)`, which avoids the catastrophic cancellation of the
/// raw form for small `t`:
/// `s(t) = t² (w+1) / (a (1+t) (w+2)²)`.
pub fn shock_position(t: f64, setup: &BurgersSetup) -> Result<f64, BurgersError> {
    if !(t >= 0.0) {
        return Err(BurgersError::Domain {
            what: "shock_position.t",
            value: t,
            expected: "[0, inf)",
        });
    }
    let w = (3.0 * t + 4.0).sqrt();
    Ok(t * t * (w + 1.0) / (setup.a() * (1.0 + t) * (w + 2.0) * (w + 2.0)))
}

/// Shock speed `mu(t) = s'(t) = ((3t+1) sqrt(3t+4) - 2) / (18 a (1+t)²)`,
/// rewritten as `t (w + 1/(w+2)) / (6 a (1+t)²)` with `w = sqrt(3t+4)` for
/// the same cancellation reason as [`shock_position`].
pub fn shock_speed(t: f64, setup: &BurgersSetup) -> Result<f64, BurgersError> {
    if !(t >= 0.0) {
        return Err(BurgersError::Domain {
            what: "shock_speed.t",
            value: t,
            expected: "[0, inf)",
        });
    }
    let w = (3.0 * t + 4.0).sqrt();
    Ok(t * (w + 1.0 / (w + 2.0)) / (6.0 * setup.a() * (1.0 + t) * (1.0 + t)))
}

/// `r(t) = sqrt(3t + 4 - 2 sqrt(3t+4))` and `K(t) = r(t)/sqrt(3)`; the
/// amplitude pair controlling the inner expansion. Stable form
/// `r = sqrt(3 t w / (w+2))`, `w = sqrt(3t+4)`.
pub fn r_and_k(t: f64) -> Result<(f64, f64), BurgersError> {
    if !(t >= 0.0) {
        return Err(BurgersError::Domain {
            what: "r_and_k.t",
            value: t,
            expected: "[0, inf)",
        });
    }
    let w = (3.0 * t + 4.0).sqrt();
    let r = (3.0 * t * w / (w + 2.0)).sqrt();
    Ok((r, r / 3.0f64.sqrt()))
}

/// Exponent of the left heat-kernel integral:
/// `F⁻(y, x, t) = -(y-x)²/(4(1+t)) + y²/4 + a y³/6`.
pub fn f_minus(y: f64, x: f64, t: f64, setup: &BurgersSetup) -> f64 {
    debug_assert!(t > -1.0);
    let d = y - x;
    -d * d / (4.0 * (1.0 + t)) + y * y / 4.0 + setup.a() * y * y * y / 6.0
}

/// `∂F⁻/∂y`; the stationarity equation reduces to
/// `a(1+t) y² + t y + x = 0`.
pub fn f_minus_dy(y: f64, x: f64, t: f64, setup: &BurgersSetup) -> f64 {
    -(y - x) / (2.0 * (1.0 + t)) + y / 2.0 + setup.a() * y * y / 2.0
}

/// Both stationary points `y∓ = -(t ± R)/(2a(1+t))` of `F⁻` in `y`, with
/// `R = sqrt(t² - 4 a x (1+t))`. `y_minus` is the interior maximum used by
/// the Laplace analysis, `y_plus` the local minimum.
///
/// Roots are extracted with the numerically stable quadratic two-step
/// (`q = -(B + sign(B) R)/2`, roots `q/A` and `C/q`) so nothing cancels for
/// small `x` or near `t = -1`.
pub fn critical_points(
    x: f64,
    t: f64,
    setup: &BurgersSetup,
) -> Result<CriticalPoints, BurgersError> {
    let a_coef = setup.a() * (1.0 + t);
    let b_coef = t;
    let c_coef = x;
    let disc = b_coef * b_coef - 4.0 * a_coef * c_coef;
    if disc < 0.0 {
        return Err(BurgersError::NoRealCriticalPoints {
            x,
            t,
            discriminant: disc,
        });
    }
    let r = disc.sqrt();
    let (y1, y2) = if r == 0.0 && b_coef == 0.0 {
        (0.0, 0.0)
    } else {
        let sign = if b_coef >= 0.0 { 1.0 } else { -1.0 };
        let q = -0.5 * (b_coef + sign * r);
        if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / a_coef, c_coef / q)
        }
    };
    Ok(CriticalPoints {
        y_minus: y1.min(y2),
        y_plus: y1.max(y2),
        r,
    })
}
