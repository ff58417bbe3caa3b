//! Finite-precision reals with a tracked absolute error bound.
//!
//! Used only where irrational angles are unavoidable (the rhombus unfolding
//! and its rotation orbit). Every operation widens the bound by the
//! propagated input error plus one rounding step at the working precision.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

/// Working precision in mantissa bits; `f64` caps it at 53.
pub const DEFAULT_PRECISION_BITS: u32 = 64;

const F64_MANTISSA: u32 = 53;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproxScalar {
    pub value: f64,
    /// Upper bound on `|value - true value|`.
    pub error: f64,
    #[serde(skip)]
    bits: u32,
}

impl ApproxScalar {
    /// An exactly known value at the default precision.
    pub fn exact(value: f64) -> Self {
        Self::with_error(value, 0.0, DEFAULT_PRECISION_BITS)
    }

    pub fn with_error(value: f64, error: f64, bits: u32) -> Self {
        let bits = bits.max(2);
        let mut out = ApproxScalar { value, error: error.abs(), bits };
        if bits < F64_MANTISSA {
            let rounded = round_to_bits(value, bits);
            out.error += (rounded - value).abs();
            out.value = rounded;
        }
        out
    }

    pub fn exact_with_precision(value: f64, bits: u32) -> Self {
        Self::with_error(value, 0.0, bits)
    }

    /// Precision bits from `FLATLAB_PRECISION`, falling back to the default.
    pub fn precision_from_env() -> u32 {
        std::env::var("FLATLAB_PRECISION")
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|&b| b >= 2)
            .unwrap_or(DEFAULT_PRECISION_BITS)
    }

    pub fn pi(bits: u32) -> Self {
        // |PI - pi| < 1.23e-16
        Self::with_error(std::f64::consts::PI, 1.3e-16, bits)
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }

    /// True when zero lies in the enclosure.
    pub fn may_be_zero(&self) -> bool {
        self.value.abs() <= self.error
    }

    fn unit_roundoff(&self) -> f64 {
        let b = self.bits.min(F64_MANTISSA);
        // round-to-nearest at b bits; the extra factor covers the f64 step
        // taken before rounding down to b bits.
        2f64.powi(-(b as i32)) * if self.bits < F64_MANTISSA { 2.0 } else { 1.0 }
    }

    fn finish(value: f64, propagated: f64, bits: u32) -> Self {
        let tmp = ApproxScalar { value, error: 0.0, bits };
        let rounding = value.abs() * tmp.unit_roundoff() + f64::MIN_POSITIVE;
        // bound the rounding of the error sum itself
        let error = (propagated + rounding) * (1.0 + 4.0 * f64::EPSILON);
        Self::with_error(value, error, bits)
    }

    pub fn abs(self) -> Self {
        ApproxScalar { value: self.value.abs(), ..self }
    }

    pub fn min(self, other: Self) -> Self {
        if self.value <= other.value {
            ApproxScalar { error: self.error.max(other.error), ..self }
        } else {
            ApproxScalar { error: self.error.max(other.error), ..other }
        }
    }

    pub fn sin(self) -> Self {
        // sin is 1-Lipschitz; libm is within one ulp.
        Self::finish(self.value.sin(), self.error + 2.0 * f64::EPSILON * self.value.sin().abs(), self.bits)
    }

    pub fn cos(self) -> Self {
        Self::finish(self.value.cos(), self.error + 2.0 * f64::EPSILON * self.value.cos().abs(), self.bits)
    }

    pub fn scale_int(self, k: i64) -> Self {
        self * ApproxScalar::exact_with_precision(k as f64, self.bits)
    }
}

fn round_to_bits(x: f64, bits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let e = x.abs().log2().floor() as i32;
    let scale = 2f64.powi(bits as i32 - 1 - e);
    (x * scale).round() / scale
}

impl Add for ApproxScalar {
    type Output = ApproxScalar;
    fn add(self, rhs: Self) -> Self {
        let bits = self.bits.min(rhs.bits);
        Self::finish(self.value + rhs.value, self.error + rhs.error, bits)
    }
}

impl Sub for ApproxScalar {
    type Output = ApproxScalar;
    fn sub(self, rhs: Self) -> Self {
        let bits = self.bits.min(rhs.bits);
        Self::finish(self.value - rhs.value, self.error + rhs.error, bits)
    }
}

impl Mul for ApproxScalar {
    type Output = ApproxScalar;
    fn mul(self, rhs: Self) -> Self {
        let bits = self.bits.min(rhs.bits);
        let prop = self.value.abs() * rhs.error + rhs.value.abs() * self.error + self.error * rhs.error;
        Self::finish(self.value * rhs.value, prop, bits)
    }
}

impl Div for ApproxScalar {
    type Output = ApproxScalar;
    /// The enclosure is infinite when the divisor may be zero.
    fn div(self, rhs: Self) -> Self {
        let bits = self.bits.min(rhs.bits);
        let q = self.value / rhs.value;
        let margin = rhs.value.abs() - rhs.error;
        if margin <= 0.0 {
            return ApproxScalar { value: q, error: f64::INFINITY, bits };
        }
        let prop = (self.error + q.abs() * rhs.error) / margin;
        Self::finish(q, prop, bits)
    }
}

impl Neg for ApproxScalar {
    type Output = ApproxScalar;
    fn neg(self) -> Self {
        ApproxScalar { value: -self.value, ..self }
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.value, self.error)
    }
}
