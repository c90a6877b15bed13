//! Uniform-grid scalar fields, finite-difference stencils and cumulative
//! integration. These back the linear-operator machinery in [`crate::parabolic`].

/// A scalar field of one variable with two derivatives available.
pub trait SmoothField {
    fn value(&self, s: f64) -> f64;
    fn d1(&self, s: f64) -> f64;
    fn d2(&self, s: f64) -> f64;
}

/// Field given by analytic closures.
pub struct AnalyticField {
    pub f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub df: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub d2f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl AnalyticField {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            f: Box::new(f),
            df: Box::new(df),
            d2f: Box::new(d2f),
        }
    }

    /// The zero field.
    pub fn zero() -> Self {
        Self::new(|_| 0.0, |_| 0.0, |_| 0.0)
    }
}

impl SmoothField for AnalyticField {
    fn value(&self, s: f64) -> f64 {
        (self.f)(s)
    }
    fn d1(&self, s: f64) -> f64 {
        (self.df)(s)
    }
    fn d2(&self, s: f64) -> f64 {
        (self.d2f)(s)
    }
}

/// Uniform grid `lo + i * step`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    lo: f64,
    step: f64,
    n: usize,
}

impl UniformGrid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Self {
        assert!(n >= 8 && hi > lo, "degenerate grid");
        Self {
            lo,
            step: (hi - lo) / (n - 1) as f64,
            n,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.lo + self.step * (self.n - 1) as f64
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn point(&self, i: usize) -> f64 {
        self.lo + self.step * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.point(i))
    }

    /// Index of the node at or left of `s`, clamped into range.
    fn cell_of(&self, s: f64) -> usize {
        let i = ((s - self.lo) / self.step).floor();
        (i.max(0.0) as usize).min(self.n - 2)
    }
}

/// Samples on a uniform grid. Evaluation between nodes uses local cubic
/// interpolation; derivatives use 4th-order stencils at nodes.
#[derive(Debug, Clone)]
pub struct GridField {
    grid: UniformGrid,
    values: Vec<f64>,
}

impl GridField {
    pub fn new(grid: UniformGrid, values: Vec<f64>) -> Self {
        assert_eq!(grid.len(), values.len());
        Self { grid, values }
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> UniformGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn node_value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// 4th-order centered first derivative at node `i` (one-sided fallback
    /// near the boundary).
    pub fn node_d1(&self, i: usize) -> f64 {
        let h = self.grid.step();
        let v = &self.values;
        let n = v.len();
        if (2..n - 2).contains(&i) {
            (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / (12.0 * h)
        } else if i < 2 {
            (-25.0 * v[i] + 48.0 * v[i + 1] - 36.0 * v[i + 2] + 16.0 * v[i + 3] - 3.0 * v[i + 4])
                / (12.0 * h)
        } else {
            (25.0 * v[i] - 48.0 * v[i - 1] + 36.0 * v[i - 2] - 16.0 * v[i - 3] + 3.0 * v[i - 4])
                / (12.0 * h)
        }
    }

    /// 4th-order centered second derivative at node `i`.
    pub fn node_d2(&self, i: usize) -> f64 {
        let h = self.grid.step();
        let v = &self.values;
        let n = v.len();
        if (2..n - 2).contains(&i) {
            (-v[i + 2] + 16.0 * v[i + 1] - 30.0 * v[i] + 16.0 * v[i - 1] - v[i - 2])
                / (12.0 * h * h)
        } else {
            // second-order one-sided; only used at the outermost nodes
            let j = i.clamp(1, n - 2);
            (v[j + 1] - 2.0 * v[j] + v[j - 1]) / (h * h)
        }
    }

    fn stencil_start(&self, s: f64) -> usize {
        let c = self.grid.cell_of(s);
        c.saturating_sub(1).min(self.grid.len() - 4)
    }
}

impl SmoothField for GridField {
    /// Local cubic (4-point Lagrange) interpolation.
    fn value(&self, s: f64) -> f64 {
        let i0 = self.stencil_start(s);
        let h = self.grid.step();
        let t = (s - self.grid.point(i0)) / h;
        let f = &self.values[i0..i0 + 4];
        // Lagrange basis on t in {0,1,2,3}
        let l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
        let l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
        let l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
        let l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
        f[0] * l0 + f[1] * l1 + f[2] * l2 + f[3] * l3
    }

    fn d1(&self, s: f64) -> f64 {
        let i = ((s - self.grid.lo()) / self.grid.step()).round() as i64;
        let i = i.clamp(0, self.grid.len() as i64 - 1) as usize;
        if (s - self.grid.point(i)).abs() < 1e-9 * self.grid.step() {
            return self.node_d1(i);
        }
        // derivative of the local cubic
        let i0 = self.stencil_start(s);
        let h = self.grid.step();
        let t = (s - self.grid.point(i0)) / h;
        let f = &self.values[i0..i0 + 4];
        let d0 = -(3.0 * t * t - 12.0 * t + 11.0) / 6.0;
        let d1 = (3.0 * t * t - 10.0 * t + 6.0) / 2.0;
        let d2 = -(3.0 * t * t - 8.0 * t + 3.0) / 2.0;
        let d3 = (3.0 * t * t - 6.0 * t + 2.0) / 6.0;
        (f[0] * d0 + f[1] * d1 + f[2] * d2 + f[3] * d3) / h
    }

    fn d2(&self, s: f64) -> f64 {
        let i = ((s - self.grid.lo()) / self.grid.step()).round() as i64;
        let i = i.clamp(0, self.grid.len() as i64 - 1) as usize;
        if (s - self.grid.point(i)).abs() < 1e-9 * self.grid.step() {
            return self.node_d2(i);
        }
        let i0 = self.stencil_start(s);
        let h = self.grid.step();
        let t = (s - self.grid.point(i0)) / h;
        let f = &self.values[i0..i0 + 4];
        let d0 = -(t - 2.0);
        let d1 = 3.0 * t - 5.0;
        let d2 = -(3.0 * t - 4.0);
        let d3 = t - 1.0;
        (f[0] * d0 + f[1] * d1 + f[2] * d2 + f[3] * d3) / (h * h)
    }
}

/// Cumulative integral `out[i] = ∫_{x_0}^{x_i} f`, 4th-order composite rule.
pub fn cumulative_integral(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 4, "need at least 4 samples");
    let mut out = vec![0.0; n];
    for i in 0..n - 1 {
        let inc = if i == 0 {
            h / 24.0 * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3])
        } else if i == n - 2 {
            h / 24.0
                * (9.0 * values[n - 1] + 19.0 * values[n - 2] - 5.0 * values[n - 3]
                    + values[n - 4])
        } else {
            h / 24.0
                * (-values[i - 1] + 13.0 * values[i] + 13.0 * values[i + 1] - values[i + 2])
        };
        out[i + 1] = out[i] + inc;
    }
    out
}
