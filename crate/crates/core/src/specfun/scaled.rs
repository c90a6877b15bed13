//! A number stored as `mantissa * exp(log_scale)`.
//!
//! Quadratures of `exp(F/eps)` reach magnitudes far beyond f64 range (the
//! exponent easily exceeds 10^5), so integrals are carried around in this
//! form and only collapsed to `f64` when the scales have cancelled.

/// Value `mantissa * exp(log_scale)` with `|mantissa| ∈ (0.1, 10]` (or the
/// exact zero `{0, 0}`). The represented value is independent of the
/// internal normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledIntegral {
    log_scale: f64,
    mantissa: f64,
}

impl ScaledIntegral {
    /// Exact zero.
    pub const ZERO: Self = Self {
        log_scale: 0.0,
        mantissa: 0.0,
    };

    /// Build from a mantissa/log-scale pair and normalize.
    ///
    /// Normalization shifts `log_scale` by an *integer* k and divides the
    /// mantissa by `exp(k)`, so the one-time rounding is a single ulp and
    /// does not grow with `|log_scale|`.
    pub fn new(mantissa: f64, log_scale: f64) -> Self {
        if mantissa == 0.0 {
            return Self::ZERO;
        }
        debug_assert!(mantissa.is_finite() && log_scale.is_finite());
        let k = mantissa.abs().ln().round();
        Self {
            log_scale: log_scale + k,
            mantissa: mantissa / k.exp(),
        }
    }

    /// Build from a plain f64.
    pub fn from_value(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// Collapse to f64. Overflows to `±inf` if the scale is too large; use
    /// [`Self::div`] or [`Self::ln_abs`] when that can happen.
    pub fn value(&self) -> f64 {
        self.mantissa * self.log_scale.exp()
    }

    /// `ln |value|`; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.log_scale + self.mantissa.abs().ln()
        }
    }

    pub fn signum(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let s = self.log_scale.max(other.log_scale);
        let m = self.mantissa * (self.log_scale - s).exp()
            + other.mantissa * (other.log_scale - s).exp();
        Self::new(m, s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled_by(-1.0))
    }

    /// Multiply by a plain factor.
    pub fn scaled_by(&self, factor: f64) -> Self {
        if factor == 0.0 || self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.mantissa * factor, self.log_scale)
    }

    /// Quotient as another scaled value; the log scales cancel exactly.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero ScaledIntegral");
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::new(
            self.mantissa / other.mantissa,
            self.log_scale - other.log_scale,
        )
    }

    /// `|self - other| / |other|` evaluated on the common scale.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        self.sub(other).div(other).value().abs()
    }
}
