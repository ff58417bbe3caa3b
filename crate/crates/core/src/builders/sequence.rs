//! Symbolic sequences `n -> c * n^p`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `n -> c * n^p` with `c > 0` and rational `p`. Written `"c*n^p"`, or
/// `"n^p"` when `c = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    coefficient: Scalar,
    exponent: Scalar,
}

impl SequenceSpec {
    pub fn new(coefficient: Scalar, exponent: Scalar) -> Result<Self> {
        if !coefficient.is_positive() {
            return Err(Error::Parse(format!("sequence coefficient must be positive, got {coefficient}")));
        }
        Ok(SequenceSpec { coefficient, exponent })
    }

    /// `n^p` with rational `p = num/den`.
    pub fn power(num: i64, den: i64) -> Self {
        SequenceSpec { coefficient: Scalar::one(), exponent: Scalar::ratio(num, den).expect("nonzero denominator") }
    }

    pub fn coefficient(&self) -> &Scalar {
        &self.coefficient
    }

    pub fn exponent(&self) -> &Scalar {
        &self.exponent
    }

    /// `c * n^p` exactly, or `None` when `n^p` is irrational.
    pub fn value(&self, n: u64) -> Option<Scalar> {
        assert!(n >= 1, "sequences are indexed from 1");
        let root = exact_rational_power(n, &self.exponent)?;
        Some(&self.coefficient * root)
    }

    pub fn value_f64(&self, n: u64) -> f64 {
        self.coefficient.to_f64() * (n as f64).powf(self.exponent.to_f64())
    }
}

/// `n^(a/b)` when it is rational, i.e. when `n^|a|` is a perfect `b`-th power.
pub(crate) fn exact_rational_power(n: u64, p: &Scalar) -> Option<Scalar> {
    let a = p.numer();
    let b: u32 = p.denom().try_into().ok()?;
    let mag: u32 = a.abs().try_into().ok()?;
    let base = num::pow(BigInt::from(n), mag as usize);
    let root = base.nth_root(b);
    if num::pow(root.clone(), b as usize) != base {
        return None;
    }
    let root = Scalar::from(root);
    if a.is_negative() {
        root.recip().ok()
    } else if a.is_zero() {
        Some(Scalar::from(BigInt::one()))
    } else {
        Some(root)
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*n^{}", self.coefficient, self.exponent)
    }
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("sequence spec {s:?} is not of the form c*n^p"));
        let (c, rest) = match s.split_once('*') {
            Some((c, rest)) => (c.trim().parse::<Scalar>().map_err(|_| bad())?, rest.trim()),
            None => (Scalar::one(), s),
        };
        let p = rest.strip_prefix("n^").ok_or_else(bad)?;
        let p = p.trim().parse::<Scalar>().map_err(|_| bad())?;
        SequenceSpec::new(c, p)
    }
}

impl Serialize for SequenceSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SequenceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn grammar() {
        let s: SequenceSpec = "n^-1".parse().unwrap();
        assert_eq!(s, SequenceSpec::power(-1, 1));
        let s: SequenceSpec = "1/1*n^0".parse().unwrap();
        assert_eq!((s.coefficient(), s.exponent()), (&q("1"), &q("0")));
        let s: SequenceSpec = "n^-1/2".parse().unwrap();
        assert_eq!(s.exponent(), &q("-1/2"));
        let s: SequenceSpec = "3/2*n^2".parse().unwrap();
        assert_eq!(s.to_string(), "3/2*n^2");
        assert_eq!(s.to_string().parse::<SequenceSpec>().unwrap(), s);
        for bad in ["", "n", "2*m^1", "0*n^1", "-1*n^2", "x*n^1", "n^1/0"] {
            assert!(bad.parse::<SequenceSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_values() {
        let inv: SequenceSpec = "n^-1".parse().unwrap();
        assert_eq!(inv.value(4), Some(q("1/4")));
        let root: SequenceSpec = "n^-1/2".parse().unwrap();
        assert_eq!(root.value(9), Some(q("1/3")));
        assert_eq!(root.value(2), None);
        assert!((root.value_f64(2) - 0.5f64.sqrt()).abs() < 1e-15);
        let c: SequenceSpec = "2*n^3/2".parse().unwrap();
        assert_eq!(c.value(4), Some(q("16")));
        assert_eq!("n^0".parse::<SequenceSpec>().unwrap().value(7), Some(q("1")));
    }
}
