//! The explicit dispersive-shock-wave approximation and the renormalized
//! convolution it derives from.

use super::modulation::GPModulationTable;
use super::{DSWParams, KdvError, StepProfile};
use crate::specfun::{integrate_adaptive_split, jacobi_dn, EllipticModulus, QuadratureSpec};

/// Truncation window for profile-derivative integrals, in units of the
/// profile width: the tail of `∫ |Λ'|` beyond `W/decay_rate` is certified
/// against the declared exponential bound.
pub const DEFAULT_WINDOW: f64 = 40.0;

/// Local wave bracket `2 dn²(a^{3/2} t ω(y)/sqrt(eps), σ(y)) + σ²(y)`.
///
/// The interior field of the sharp-step fan is `a (bracket - 1)`: it joins
/// the left state `a` at `y = -1` (σ = 0, dn = 1) and peaks at `2a` on the
/// leading soliton crest `y = 2/3` (σ = 1, argument 0).
pub fn gp_interior_profile(
    y: f64,
    t: f64,
    params: &DSWParams,
    table: &GPModulationTable,
) -> Result<f64, KdvError> {
    if !(t > 0.0) {
        return Err(KdvError::Domain {
            what: "gp_interior_profile.t",
            value: t,
            expected: "(0, inf)",
        });
    }
    let sigma = table.sigma_at(y)?;
    let omega = table.omega_at(y)?;
    let arg = params.a().powf(1.5) * t * omega / params.eps().sqrt();
    let modulus = EllipticModulus::new(sigma)?;
    let dn = jacobi_dn(arg, modulus);
    Ok(2.0 * dn * dn + sigma * sigma)
}

/// Evaluates the three-term dispersive-shock approximation
///
/// ```text
/// u ≈ 2 Λ((x+at)/ρ) - Λ((x-2at/3)/ρ)
///     - (at/ρ) ∫_{-1}^{2/3} Λ'((x-aty)/ρ) [2 dn² + σ²](y) dy
/// ```
///
/// with the default derivative window (see [`dsw_approximation_windowed`]).
pub fn dsw_approximation(
    x: f64,
    t: f64,
    params: &DSWParams,
    profile: &StepProfile,
    table: &GPModulationTable,
    spec: &QuadratureSpec,
) -> Result<f64, KdvError> {
    dsw_approximation_windowed(x, t, params, profile, table, spec, DEFAULT_WINDOW)
}

/// As [`dsw_approximation`], with the integration window `w` (in profile
/// widths) explicit. The `y`-integral runs only where
/// `|x - a t y| <= w ρ / decay_rate`; the discarded remainder is bounded by
/// the profile's declared tail mass and added to the (logged) error budget.
pub fn dsw_approximation_windowed(
    x: f64,
    t: f64,
    params: &DSWParams,
    profile: &StepProfile,
    table: &GPModulationTable,
    spec: &QuadratureSpec,
    w: f64,
) -> Result<f64, KdvError> {
    if !(t > 0.0) {
        return Err(KdvError::Domain {
            what: "dsw_approximation.t",
            value: t,
            expected: "(0, inf)",
        });
    }
    let (a, eps, rho) = (params.a(), params.eps(), params.rho());
    let at = a * t;
    let outer = 2.0 * profile.lambda((x + at) / rho) - profile.lambda((x - 2.0 * at / 3.0) / rho);

    // active y-window: where the profile derivative has mass
    let reach = w * rho / profile.decay_rate();
    let y_lo = ((x - reach) / at).max(-1.0);
    let y_hi = ((x + reach) / at).min(2.0 / 3.0);
    // bracket ∈ [2 - σ², 2 + σ²] ⊂ [1, 3]
    let tail_bound = 3.0 * profile.tail_mass_bound(w / profile.decay_rate());
    if y_lo >= y_hi {
        log::debug!("dsw_approximation: empty window at x = {x}, tail bound {tail_bound:.2e}");
        return Ok(outer);
    }

    // resolve the dn oscillation: smallest y-period over the window
    let mut max_omega_prime = 0.0f64;
    for i in 0..=32 {
        let y = y_lo + (y_hi - y_lo) * i as f64 / 32.0;
        max_omega_prime = max_omega_prime.max(table.omega_prime_at(y)?.abs());
    }
    let phase_rate = a.powf(1.5) * t * max_omega_prime / eps.sqrt(); // d(arg)/dy
    let min_period = std::f64::consts::PI / phase_rate.max(1e-300);
    let step = (min_period / 10.0).min((y_hi - y_lo) / 4.0);
    let n_cells = (((y_hi - y_lo) / step).ceil() as usize).clamp(4, 100_000);
    let mut points: Vec<f64> = (0..=n_cells)
        .map(|i| y_lo + (y_hi - y_lo) * i as f64 / n_cells as f64)
        .collect();
    points[0] = y_lo;
    *points.last_mut().unwrap() = y_hi;

    let integrand = |y: f64| {
        let sigma = table.sigma_at(y).expect("y in range");
        let omega = table.omega_at(y).expect("y in range");
        let arg = a.powf(1.5) * t * omega / eps.sqrt();
        let dn = jacobi_dn(arg, EllipticModulus::new(sigma).expect("sigma in range"));
        let bracket = 2.0 * dn * dn + sigma * sigma;
        profile.dlambda((x - at * y) / rho) * bracket
    };
    let (integral, quad_err) = integrate_adaptive_split(&integrand, &points, spec)?;
    log::debug!(
        "dsw_approximation: window [{y_lo:.4}, {y_hi:.4}], {n_cells} cells, \
         quad err {quad_err:.2e}, tail bound {tail_bound:.2e}"
    );
    Ok(outer - at / rho * integral)
}

/// Renormalized convolution approximation for an arbitrary inner solution
/// `Z(eta, theta)`:
///
/// ```text
/// U0(x, t) = (1/(Λ⁺ - Λ⁻)) ∫ Z((x - ρ s)/sqrt(eps), t/sqrt(eps)) Λ'(s) ds
/// ```
///
/// evaluated over the effective support of `Λ'` with the tail bounded by
/// the declared decay.
pub fn renormalized_u0(
    x: f64,
    t: f64,
    params: &DSWParams,
    profile: &StepProfile,
    z_field: &dyn Fn(f64, f64) -> f64,
    spec: &QuadratureSpec,
) -> Result<f64, KdvError> {
    let (eps, rho) = (params.eps(), params.rho());
    let jump = profile.limit_plus() - profile.limit_minus();
    let w = DEFAULT_WINDOW / profile.decay_rate();
    let theta = t / eps.sqrt();
    let integrand = |s: f64| z_field((x - rho * s) / eps.sqrt(), theta) * profile.dlambda(s);
    let n_cells = 64usize;
    let points: Vec<f64> = (0..=n_cells)
        .map(|i| -w + 2.0 * w * i as f64 / n_cells as f64)
        .collect();
    let (integral, _) = integrate_adaptive_split(&integrand, &points, spec)?;
    Ok(integral / jump)
}

/// Compactly supported smooth test function for the Green-property check.
pub struct TestFunction<'a> {
    pub f: &'a dyn Fn(f64) -> f64,
    pub df: &'a dyn Fn(f64) -> f64,
    pub support: (f64, f64),
}

/// Green-function property of `G = (1/(Λ⁺ - Λ⁻)) ∂Z/∂η`: returns
/// `∫ G(η, θ) f(η) dη - f(0)`, which tends to 0 as `θ -> 0⁺`. Computed via
/// integration by parts, `-(1/(Λ⁺-Λ⁻)) ∫ Z(η, θ) f'(η) dη - f(0)`, so `Z`
/// itself is never differentiated.
pub fn green_property_check(
    z_field: &dyn Fn(f64, f64) -> f64,
    test_fn: &TestFunction,
    theta: f64,
    params: &DSWParams,
    spec: &QuadratureSpec,
) -> Result<f64, KdvError> {
    if !(theta > 0.0) {
        return Err(KdvError::Domain {
            what: "green_property_check.theta",
            value: theta,
            expected: "(0, inf)",
        });
    }
    let jump = 0.0 - params.a(); // Λ⁺ - Λ⁻ for the step (a, 0)
    let (lo, hi) = test_fn.support;
    let n_cells = 64usize;
    let points: Vec<f64> = (0..=n_cells)
        .map(|i| lo + (hi - lo) * i as f64 / n_cells as f64)
        .collect();
    let integrand = |eta: f64| z_field(eta, theta) * (test_fn.df)(eta);
    let (integral, _) = integrate_adaptive_split(&integrand, &points, spec)?;
    Ok(-integral / jump - (test_fn.f)(0.0))
}

#[cfg(test)]
mod tests {
    use super::super::modulation::build_modulation_table;
    use super::*;
    use crate::testkit::{assert_close, assert_rel_close};

    fn table() -> GPModulationTable {
        build_modulation_table(256, &QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn interior_profile_endpoints() {
        let params = DSWParams::new(1.5, 1e-3, 0.01).unwrap();
        let t = table();
        // y = -1: sigma = 0, dn = 1 -> bracket 2, field a
        let b = gp_interior_profile(-1.0, 0.7, &params, &t).unwrap();
        assert_close(b, 2.0, 1e-12, "trailing edge bracket");
        assert_close(params.a() * (b - 1.0), params.a(), 1e-11, "left state");
        // y = 2/3: sigma = 1 and omega = 0 -> argument 0, bracket 3, field 2a
        let b = gp_interior_profile(2.0 / 3.0, 0.7, &params, &t).unwrap();
        assert_close(b, 3.0, 1e-12, "soliton crest bracket");
        assert_close(
            params.a() * (b - 1.0),
            2.0 * params.a(),
            1e-11,
            "leading amplitude 2a",
        );
    }

    #[test]
    fn interior_profile_respects_dn_bounds() {
        let params = DSWParams::new(1.0, 2e-4, 0.02).unwrap();
        let t = table();
        for i in 0..=100 {
            let y = -1.0 + (5.0 / 3.0) * i as f64 / 100.0;
            let sigma = t.sigma_at(y).unwrap();
            let b = gp_interior_profile(y, 1.0, &params, &t).unwrap();
            assert!(
                b >= 2.0 - sigma * sigma - 1e-12 && b <= 2.0 + sigma * sigma + 1e-12,
                "bracket out of [2-σ², 2+σ²] at y = {y}"
            );
        }
    }

    #[test]
    fn dsw_limits_outside_the_fan() {
        let params = DSWParams::new(1.0, 1e-3, 1e-3).unwrap();
        let profile = StepProfile::tanh_step(1.0).unwrap();
        let t = table();
        let spec = QuadratureSpec::default();
        // far behind the trailing edge: 2a - a - 0 = a
        let u = dsw_approximation(-2.0, 1.0, &params, &profile, &t, &spec).unwrap();
        assert_rel_close(u, 1.0, 1e-9, "behind the fan");
        // far ahead of the leading edge: 0
        let u = dsw_approximation(1.5, 1.0, &params, &profile, &t, &spec).unwrap();
        assert!(u.abs() < 1e-9, "ahead of the fan: {u}");
    }

    #[test]
    fn sharp_step_limit_reduces_to_the_interior_law() {
        // rho/(at) ~ 1e-3: the derivative acts as a mollifier and the
        // formula collapses to a (bracket - 1) at y0 = x/(at)
        let eps = 0.01;
        let a = 1.0;
        let t_end = 1.0;
        let params = DSWParams::new(a, eps, 1e-3).unwrap();
        let profile = StepProfile::tanh_step(a).unwrap();
        let tab = table();
        let spec = QuadratureSpec::default();
        for &y0 in &[-0.9, -0.5, 0.0, 0.4, 0.58] {
            let x = y0 * a * t_end;
            let u = dsw_approximation(x, t_end, &params, &profile, &tab, &spec).unwrap();
            let b = gp_interior_profile(y0, t_end, &params, &tab).unwrap();
            assert!(
                (u - a * (b - 1.0)).abs() <= 1e-3 * a,
                "sharp-step law at y0 = {y0}: {} vs {}",
                u,
                a * (b - 1.0)
            );
        }
    }

    #[test]
    fn renormalized_u0_constant_and_mollifier_limits() {
        let params = DSWParams::new(1.0, 1e-2, 1e-4).unwrap();
        let profile = StepProfile::tanh_step(1.0).unwrap();
        let spec = QuadratureSpec::default();
        // constant Z passes through
        let u = renormalized_u0(0.3, 0.5, &params, &profile, &|_, _| 2.75, &spec).unwrap();
        assert_rel_close(u, 2.75, 1e-10, "constant field");
        // mollifier limit: smooth Z is reproduced pointwise as rho -> 0
        let z = |eta: f64, theta: f64| (0.3 * eta).sin() * (-0.1 * theta).exp() + 0.5;
        let (x, t) = (0.21, 0.4);
        let u = renormalized_u0(x, t, &params, &profile, &z, &spec).unwrap();
        let expected = z(x / params.eps().sqrt(), t / params.eps().sqrt());
        assert_close(u, expected, 1e-5, "mollifier limit");
    }

    #[test]
    fn renormalized_u0_reproduces_the_datum_at_t_zero() {
        // with the sharp step as Z(·, 0) the convolution telescopes to
        // Lambda(x/rho) exactly
        let params = DSWParams::new(1.0, 1e-2, 0.05).unwrap();
        let profile = StepProfile::tanh_step(1.0).unwrap();
        let spec = QuadratureSpec::default();
        let z = |eta: f64, _theta: f64| if eta < 0.0 { 1.0 } else { 0.0 };
        for &x in &[-0.1, -0.02, 0.0, 0.013, 0.2] {
            let u = renormalized_u0(x, 0.0, &params, &profile, &z, &spec).unwrap();
            assert_close(
                u,
                profile.lambda(x / params.rho()),
                1e-8,
                "datum reproduction",
            );
        }
    }

    #[test]
    fn renormalized_u0_matches_the_explicit_formula_inside_the_fan() {
        // Z = sharp-step fan field in inner variables (eps = 1 problem)
        let a = 1.0;
        let eps = 2e-4;
        let params = DSWParams::new(a, eps, 0.02).unwrap();
        let profile = StepProfile::tanh_step(a).unwrap();
        let tab = table();
        let spec = QuadratureSpec::default();
        let tab2 = tab.clone();
        let inner_params = DSWParams::new(a, 1.0, 1.0).unwrap();
        let z = move |eta: f64, theta: f64| {
            let y = eta / (a * theta);
            if y <= -1.0 {
                a
            } else if y >= 2.0 / 3.0 {
                0.0
            } else {
                let b = gp_interior_profile(y, theta, &inner_params, &tab2).unwrap();
                a * (b - 1.0)
            }
        };
        let t = 1.0;
        for &x in &[-0.6, -0.2, 0.3] {
            let via_convolution = renormalized_u0(x, t, &params, &profile, &z, &spec).unwrap();
            let via_formula = dsw_approximation(x, t, &params, &profile, &tab, &spec).unwrap();
            assert_close(via_convolution, via_formula, 1e-6, "two routes to U0");
        }
    }

    #[test]
    fn green_property_with_a_shrinking_mock_kernel() {
        // Z = smooth step of width theta: G = Z_eta / (Λ⁺-Λ⁻) tends to the
        // delta; the defect must shrink monotonically with theta
        let params = DSWParams::new(1.0, 1.0, 1.0).unwrap();
        let spec = QuadratureSpec::default();
        let z = |eta: f64, theta: f64| 1.0 / (1.0 + (eta / theta).exp());
        let f = |eta: f64| (-eta * eta / 8.0).exp();
        let df = |eta: f64| -0.25 * eta * (-eta * eta / 8.0).exp();
        let tf = TestFunction {
            f: &f,
            df: &df,
            support: (-14.0, 14.0),
        };
        let mut prev = f64::INFINITY;
        for &theta in &[0.5, 0.2, 0.1, 0.05] {
            let defect = green_property_check(&z, &tf, theta, &params, &spec)
                .unwrap()
                .abs();
            assert!(defect < prev, "defect must shrink: {defect} at {theta}");
            prev = defect;
        }
        assert!(prev < 2e-3, "small-theta defect {prev}");

        // unit mass: constant plateau f = 1 near the kernel
        let one = |_: f64| 1.0;
        let done = |eta: f64| {
            // smooth roll-off far outside the kernel support
            let r = (eta.abs() - 10.0).max(0.0);
            -eta.signum() * 2.0 * r * (-r * r).exp()
        };
        let tf1 = TestFunction {
            f: &one,
            df: &done,
            support: (-16.0, 16.0),
        };
        let defect = green_property_check(&z, &tf1, 0.05, &params, &spec).unwrap();
        assert!(defect.abs() < 1e-8, "unit mass defect {defect}");
    }
}
