//! Small helpers shared by unit tests. Oracles here are deliberately
//! independent of the production quadrature path (recursive Simpson, not
//! Gauss–Kronrod).

pub fn assert_close(got: f64, want: f64, tol: f64, msg: &str) {
    let diff = (got - want).abs();
    assert!(
        diff <= tol,
        "{msg}: got {got:e}, want {want:e}, |diff| = {diff:e} > {tol:e}"
    );
}

pub fn assert_rel_close(got: f64, want: f64, rel_tol: f64, msg: &str) {
    let diff = (got - want).abs();
    let scale = want.abs().max(f64::MIN_POSITIVE);
    assert!(
        diff <= rel_tol * scale,
        "{msg}: got {got:e}, want {want:e}, rel diff = {:e} > {rel_tol:e}",
        diff / scale
    );
}

/// Adaptive Simpson quadrature with simple error halving.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, tol, 48)
}

/// Centered first derivative, O(h^2).
pub fn central_diff(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Least-squares slope of y against x.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}
