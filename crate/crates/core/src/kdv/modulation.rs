//! Whitham modulation data of the sharp-step problem: the monotone map
//! `y ∈ [-1, 2/3]  ↦  (σ(y), ω(y))` defined implicitly by
//!
//! ```text
//! lhs(σ) := 1 + σ² - 2σ²(1-σ²)K(σ) / (E(σ) - (1-σ²)K(σ)) = 3y,
//! ω(y)   = (1/sqrt(6)) { y - (1 + σ²(y))/3 }.
//! ```
//!
//! `lhs` is evaluated by AGM in the interior and by series at both ends,
//! where the direct form cancels catastrophically (`E - (1-σ²)K ~ πσ²/4`
//! near 0) or `K` diverges (σ -> 1). With `m = σ²`, `m' = 1 - m` and
//! `L = ln(4/sqrt(m'))`:
//!
//! ```text
//! σ -> 0:  lhs = -3 + (9/2) m + (3/16) m² + (21/256) m³ + O(m⁴)
//! σ -> 1:  lhs =  2 - m'(1 + 2L) - m'²(L² - L - 1/2) + O(m'³L³)
//! ```
//!
//! so `lhs(0) = -3` (y = -1) and `lhs(1) = 2` (y = 2/3) exactly.

use super::KdvError;
use crate::specfun::{
    complete_elliptic_e, complete_elliptic_k, EllipticModulus, QuadratureSpec,
};

const SIGMA_LEFT_CUT: f64 = 0.01;
const MC_RIGHT_CUT: f64 = 2e-6; // in m' = 1 - σ²; σ = 1 - 1e-6 gives m' ≈ 2e-6

/// `lhs(σ)` with endpoint regularization.
pub(crate) fn modulation_lhs(sigma: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&sigma));
    if sigma < SIGMA_LEFT_CUT {
        return lhs_left_series(sigma * sigma);
    }
    let modulus = EllipticModulus::new(sigma).expect("validated");
    let mc = modulus.m_complement();
    if mc < MC_RIGHT_CUT {
        return lhs_right_series(mc);
    }
    let m = modulus.m();
    let k = complete_elliptic_k(modulus).expect("sigma < 1");
    let e = complete_elliptic_e(modulus).expect("in range");
    let d = e - mc * k;
    1.0 + m - 2.0 * m * mc * k / d
}

/// `d lhs / d σ`, same branch structure. Uses
/// `dK/dσ = (E - (1-σ²)K)/(σ(1-σ²))` and `dE/dσ = (E - K)/σ`.
pub(crate) fn modulation_lhs_deriv(sigma: f64) -> f64 {
    if sigma < SIGMA_LEFT_CUT {
        let m = sigma * sigma;
        let df_dm = 4.5 + (3.0 / 8.0) * m + (63.0 / 256.0) * m * m;
        return 2.0 * sigma * df_dm;
    }
    let modulus = EllipticModulus::new(sigma).expect("validated");
    let mc = modulus.m_complement();
    if mc < MC_RIGHT_CUT {
        let l = 0.5 * (16.0 / mc).ln();
        let df_dmc = -2.0 * l - 2.0 * mc * l * l + 3.0 * mc * l + 0.5 * mc;
        return -2.0 * sigma * df_dmc;
    }
    let m = modulus.m();
    let k = complete_elliptic_k(modulus).expect("sigma < 1");
    let e = complete_elliptic_e(modulus).expect("in range");
    let d = e - mc * k;
    let g = 2.0 * m * mc * k / d;
    let dk = d / (sigma * mc);
    let de = (e - k) / sigma;
    let dd = de + 2.0 * sigma * k - mc * dk;
    let dg = 2.0 * (2.0 * sigma * (mc - m) * k + m * mc * dk) / d - g * dd / d;
    2.0 * sigma - dg
}

fn lhs_left_series(m: f64) -> f64 {
    -3.0 + 4.5 * m + (3.0 / 16.0) * m * m + (21.0 / 256.0) * m * m * m
}

fn lhs_right_series(mc: f64) -> f64 {
    if mc == 0.0 {
        return 2.0;
    }
    let l = 0.5 * (16.0 / mc).ln();
    2.0 - mc * (1.0 + 2.0 * l) - mc * mc * (l * l - l - 0.5)
}

/// Inverts the left series for `m` given `y` close to -1.
fn invert_left_series(y: f64) -> f64 {
    let target = 3.0 * y;
    let mut m = (2.0 / 3.0) * (1.0 + y).max(0.0);
    for _ in 0..30 {
        let f = lhs_left_series(m) - target;
        let df = 4.5 + (3.0 / 8.0) * m + (63.0 / 256.0) * m * m;
        let step = f / df;
        m -= step;
        if step.abs() < 1e-17 {
            break;
        }
    }
    m.max(0.0)
}

/// Inverts the right series for `m'` given `y` close to 2/3.
fn invert_right_series(y: f64) -> f64 {
    let u = (2.0 - 3.0 * y).max(0.0);
    if u == 0.0 {
        return 0.0;
    }
    let mut mc = u / (1.0 + (16.0 / u).ln());
    for _ in 0..60 {
        let l = 0.5 * (16.0 / mc).ln();
        let next = (u - mc * mc * (l * l - l - 0.5)) / (1.0 + 2.0 * l);
        if (next - mc).abs() < 1e-18 + 1e-16 * mc {
            mc = next;
            break;
        }
        mc = next;
    }
    mc.max(0.0)
}

/// The unique `σ ∈ [0, 1]` solving the modulation relation at `y`.
pub fn modulation_sigma(y: f64, _spec: &QuadratureSpec) -> Result<f64, KdvError> {
    if !((-1.0 - 1e-12)..=(2.0 / 3.0 + 1e-12)).contains(&y) {
        return Err(KdvError::Domain {
            what: "modulation_sigma.y",
            value: y,
            expected: "[-1, 2/3]",
        });
    }
    let y = y.clamp(-1.0, 2.0 / 3.0);
    let y_left = lhs_left_series(SIGMA_LEFT_CUT * SIGMA_LEFT_CUT) / 3.0;
    if y <= y_left {
        return Ok(invert_left_series(y).sqrt());
    }
    let y_right = lhs_right_series(MC_RIGHT_CUT) / 3.0;
    if y >= y_right {
        let mc = invert_right_series(y);
        return Ok((1.0 - mc).max(0.0).sqrt());
    }

    // bracketed regula falsi with Illinois weighting on the monotone lhs
    let target = 3.0 * y;
    let mut lo = SIGMA_LEFT_CUT;
    let mut hi = (1.0 - 0.5 * MC_RIGHT_CUT).sqrt();
    let mut flo = modulation_lhs(lo) - target;
    let mut fhi = modulation_lhs(hi) - target;
    debug_assert!(flo <= 0.0 && fhi >= 0.0);
    let mut last_side = 0i8;
    let mut best = (0.5 * (lo + hi), f64::INFINITY);
    for _ in 0..200 {
        if hi - lo < 1e-16 {
            break;
        }
        let sec = lo - flo * (hi - lo) / (fhi - flo);
        let mid = if sec > lo && sec < hi {
            sec
        } else {
            0.5 * (lo + hi)
        };
        let f = modulation_lhs(mid) - target;
        if f.abs() < best.1 {
            best = (mid, f.abs());
        }
        if f == 0.0 {
            break;
        }
        if f < 0.0 {
            lo = mid;
            flo = f;
            if last_side == -1 {
                fhi *= 0.5; // Illinois: stop one-sided stagnation
            }
            last_side = -1;
        } else {
            hi = mid;
            fhi = f;
            if last_side == 1 {
                flo *= 0.5;
            }
            last_side = 1;
        }
    }
    Ok(best.0)
}

#[derive(Debug, Clone, Copy)]
struct Node {
    y: f64,
    sigma: f64,
    omega: f64,
    /// `dy/dσ` at the node, Fritsch–Carlson limited for monotone Hermite
    dy_dsigma: f64,
}

/// Tabulated modulation map with monotone cubic-Hermite interpolation of
/// `y(σ)` (inverted per query). Nodes are uniform in `σ` over the interior
/// and graded as `m' ∝ j⁴` toward the logarithmic endpoint `σ = 1`, which
/// equidistributes the interpolation error.
#[derive(Debug, Clone)]
pub struct GPModulationTable {
    nodes: Vec<Node>,
}

/// Builds a table with `n_nodes >= 16` nodes.
pub fn build_modulation_table(
    n_nodes: usize,
    spec: &QuadratureSpec,
) -> Result<GPModulationTable, KdvError> {
    let _ = spec;
    if n_nodes < 16 {
        return Err(KdvError::Domain {
            what: "build_modulation_table.n_nodes",
            value: n_nodes as f64,
            expected: "[16, inf)",
        });
    }
    let n_interior = (n_nodes * 3) / 5;
    let n_tail = n_nodes - n_interior; // includes the σ = 1 endpoint
    let mc_join = 0.3f64;
    let sigma_join = (1.0 - mc_join).sqrt();

    let mut sigmas = Vec::with_capacity(n_nodes);
    for i in 0..n_interior {
        sigmas.push(sigma_join * i as f64 / n_interior as f64);
    }
    for j in (1..n_tail).rev() {
        let mc = mc_join * (j as f64 / n_tail as f64).powi(4);
        sigmas.push((1.0 - mc).sqrt());
    }
    sigmas.push(1.0);

    let mut nodes: Vec<Node> = sigmas
        .iter()
        .map(|&sigma| {
            let y = modulation_lhs(sigma) / 3.0;
            Node {
                y,
                sigma,
                omega: omega_of(y, sigma),
                dy_dsigma: modulation_lhs_deriv(sigma) / 3.0,
            }
        })
        .collect();
    // σ = 1 is a logarithmic point; the final cell is handled by the series
    // inversion, so the (infinite) slope there is irrelevant. Keep Hermite
    // data monotone everywhere else.
    let last = nodes.len() - 1;
    nodes[last].y = 2.0 / 3.0;
    nodes[last].omega = 0.0;
    for i in 0..last {
        let secant = (nodes[i + 1].y - nodes[i].y) / (nodes[i + 1].sigma - nodes[i].sigma);
        debug_assert!(secant > 0.0, "y(sigma) must increase");
        for n in [i, i + 1] {
            if nodes[n].dy_dsigma > 3.0 * secant {
                nodes[n].dy_dsigma = 3.0 * secant;
            }
        }
    }
    Ok(GPModulationTable { nodes })
}

fn omega_of(y: f64, sigma: f64) -> f64 {
    (y - (1.0 + sigma * sigma) / 3.0) / 6.0f64.sqrt()
}

impl GPModulationTable {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node data `(y, σ, ω)` for export.
    pub fn node(&self, i: usize) -> (f64, f64, f64) {
        let n = &self.nodes[i];
        (n.y, n.sigma, n.omega)
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.nodes[0].y, self.nodes[self.nodes.len() - 1].y)
    }

    /// `σ(y)` by inverting the monotone Hermite interpolant of `y(σ)` on
    /// the bracketing cell; the final (logarithmic) cell falls back to the
    /// endpoint series inversion.
    pub fn sigma_at(&self, y: f64) -> Result<f64, KdvError> {
        if !((-1.0 - 1e-12)..=(2.0 / 3.0 + 1e-12)).contains(&y) {
            return Err(KdvError::Domain {
                what: "GPModulationTable.sigma_at.y",
                value: y,
                expected: "[-1, 2/3]",
            });
        }
        let y = y.clamp(-1.0, 2.0 / 3.0);
        let n = self.nodes.len();
        if y <= self.nodes[0].y {
            return Ok(self.nodes[0].sigma);
        }
        if y >= self.nodes[n - 2].y {
            // last cell: series inversion is exact to O(m'³ L³)
            return Ok((1.0 - invert_right_series(y)).max(0.0).sqrt());
        }
        let mut lo = 0usize;
        let mut hi = n - 2;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.nodes[mid].y <= y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = &self.nodes[lo];
        let b = &self.nodes[lo + 1];
        let dx = b.sigma - a.sigma;
        let (m0, m1) = (a.dy_dsigma * dx, b.dy_dsigma * dx);
        let herm = |t: f64| {
            let t2 = t * t;
            let t3 = t2 * t;
            (2.0 * t3 - 3.0 * t2 + 1.0) * a.y
                + (t3 - 2.0 * t2 + t) * m0
                + (-2.0 * t3 + 3.0 * t2) * b.y
                + (t3 - t2) * m1
        };
        let dherm = |t: f64| {
            let t2 = t * t;
            (6.0 * t2 - 6.0 * t) * a.y
                + (3.0 * t2 - 4.0 * t + 1.0) * m0
                + (6.0 * t - 6.0 * t2) * b.y
                + (3.0 * t2 - 2.0 * t) * m1
        };
        // safeguarded Newton on the cubic
        let (mut tlo, mut thi) = (0.0f64, 1.0f64);
        let mut t = (y - a.y) / (b.y - a.y);
        for _ in 0..100 {
            let f = herm(t) - y;
            if f.abs() < 1e-17 {
                break;
            }
            if f > 0.0 {
                thi = t;
            } else {
                tlo = t;
            }
            let d = dherm(t);
            let newton = t - f / d;
            t = if d != 0.0 && newton > tlo && newton < thi {
                newton
            } else {
                0.5 * (tlo + thi)
            };
            if thi - tlo < 1e-16 {
                break;
            }
        }
        Ok(a.sigma + t * dx)
    }

    /// `ω(y)` from the closed formula using the interpolated modulus.
    pub fn omega_at(&self, y: f64) -> Result<f64, KdvError> {
        let sigma = self.sigma_at(y)?;
        Ok(omega_of(y, sigma))
    }

    /// `dω/dy = (1 - (2/3) σ σ'(y)) / sqrt(6)` with `σ σ' = 3σ / lhs'(σ)`;
    /// finite at both endpoints (`σσ' -> 1/3` at y = -1, `-> 0` at y = 2/3).
    pub fn omega_prime_at(&self, y: f64) -> Result<f64, KdvError> {
        let sigma = self.sigma_at(y)?;
        let fp = modulation_lhs_deriv(sigma);
        let ss = if sigma < 1e-10 {
            1.0 / 3.0
        } else {
            3.0 * sigma / fp
        };
        Ok((1.0 - (2.0 / 3.0) * ss) / 6.0f64.sqrt())
    }
}
