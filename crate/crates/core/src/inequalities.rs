//! Closed-form angle and modulus bounds for nearby cylinders.
//!
//! Everything here is a squared rational predicate: bounds that naturally
//! involve `|v0|` or a square root are squared so the comparison stays exact.
//! Where `|v0|` itself enters unsquared (the modulus lower bound) callers pass
//! a rational upper bound on it, which only makes the bound more conservative.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::Vec2;

/// Relative precision of the rational upper bound on `|v0|`.
pub const NORM_BOUND_BITS: u32 = 32;

/// Tangent of the angle from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TanAngle {
    Finite(Scalar),
    /// The vectors are orthogonal; `|tan|` is infinite.
    Perpendicular,
}

impl TanAngle {
    /// `tan^2`, or `None` for a right angle.
    pub fn squared(&self) -> Option<Scalar> {
        match self {
            TanAngle::Finite(t) => Some(t.square()),
            TanAngle::Perpendicular => None,
        }
    }
}

/// `cross(u, v) / dot(u, v)`.
pub fn tan_angle(u: &Vec2, v: &Vec2) -> Result<TanAngle> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let dot = u.dot(v);
    if dot.is_zero() {
        return Ok(TanAngle::Perpendicular);
    }
    Ok(TanAngle::Finite(u.cross(v) / dot))
}

/// Square of the largest `|tan|` of the angle between `v0` and any `v` with
/// `|v - v0| < eps`: `eps^2 / (|v0|^2 - eps^2)`.
pub fn lemma23_tan_bound_sq(v0_norm_sq: &Scalar, eps: &Scalar) -> Result<Scalar> {
    let eps_sq = eps.square();
    if eps.is_negative() || &eps_sq >= v0_norm_sq {
        return Err(Error::Domain(format!("need 0 <= eps^2 < |v0|^2, got eps = {eps}")));
    }
    Ok(&eps_sq / (v0_norm_sq - &eps_sq))
}

/// Lower bound `A / (r + eps)^2` on the modulus of an area-`A` cylinder whose
/// core lies within `eps` of `v0`, given `r >= |v0|`.
pub fn f1(area: &Scalar, v0_norm_upper: &Scalar, eps: &Scalar) -> Result<Scalar> {
    if !area.is_positive() || !v0_norm_upper.is_positive() || eps.is_negative() {
        return Err(Error::Domain("f1 needs area > 0, |v0| bound > 0, eps >= 0".into()));
    }
    Ok(area / (v0_norm_upper + eps).square())
}

/// Square of the tangent bound between two vectors both within `eps` of `v0`:
/// `4 eps^2 (|v0|^2 - eps^2) / (|v0|^2 - 2 eps^2)^2`.
pub fn f2_sq(v0_norm_sq: &Scalar, eps: &Scalar) -> Result<Scalar> {
    let eps_sq = eps.square();
    let two_eps_sq = &eps_sq + &eps_sq;
    if eps.is_negative() || &two_eps_sq >= v0_norm_sq {
        return Err(Error::Domain(format!("need 0 <= 2 eps^2 < |v0|^2, got eps = {eps}")));
    }
    let num = Scalar::from_int(4) * &eps_sq * (v0_norm_sq - &eps_sq);
    Ok(num / (v0_norm_sq - &two_eps_sq).square())
}

/// Rational `r >= |v|` within relative `2^-NORM_BOUND_BITS`.
pub fn norm_upper(v: &Vec2) -> Scalar {
    v.norm_sq().sqrt_upper(NORM_BOUND_BITS)
}

/// The rational predicate certifying a gap radius: `f2(eps)^2 < f1(eps)^2`.
pub fn gap_holds(area: &Scalar, v0: &Vec2, eps: &Scalar) -> bool {
    let norm_sq = v0.norm_sq();
    let upper = norm_upper(v0);
    match (f2_sq(&norm_sq, eps), f1(area, &upper, eps)) {
        (Ok(f2s), Ok(f1v)) => eps.is_positive() && f2s < f1v.square(),
        _ => false,
    }
}

/// Halve from `|v0|/2` (rational upper bound) until the gap predicate holds.
pub fn find_gap_epsilon(area: &Scalar, v0: &Vec2) -> Result<Scalar> {
    if !area.is_positive() {
        return Err(Error::Domain("area must be positive".into()));
    }
    if v0.is_zero() {
        return Err(Error::ZeroVector);
    }
    let half = Scalar::ratio(1, 2)?;
    let mut eps = norm_upper(v0) * &half;
    // f2 -> 0 and f1 -> A/|v0|^2 > 0, so this loop ends; the cap only guards
    // against a logic error.
    for _ in 0..4096 {
        if gap_holds(area, v0, &eps) {
            return Ok(eps);
        }
        eps = eps * &half;
    }
    Err(Error::Domain("no gap radius found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn tan_angle_examples() {
        assert_eq!(tan_angle(&Vec2::ints(1, 0), &Vec2::ints(1, 1)).unwrap(), TanAngle::Finite(q("1")));
        assert_eq!(tan_angle(&Vec2::ints(1, 0), &Vec2::ints(0, 1)).unwrap(), TanAngle::Perpendicular);
        // (2*1 - 1*3) / (6 + 1)
        assert_eq!(tan_angle(&Vec2::ints(2, 1), &Vec2::ints(3, 1)).unwrap(), TanAngle::Finite(q("-1/7")));
        assert_eq!(tan_angle(&Vec2::zero(), &Vec2::ints(1, 0)), Err(Error::ZeroVector));
    }

    #[test]
    fn lemma23_examples() {
        assert_eq!(lemma23_tan_bound_sq(&q("1"), &q("0")).unwrap(), q("0"));
        assert_eq!(lemma23_tan_bound_sq(&q("1"), &q("1/2")).unwrap(), q("1/3"));
        assert_eq!(lemma23_tan_bound_sq(&q("25"), &q("3")).unwrap(), q("9/16"));
        assert!(matches!(lemma23_tan_bound_sq(&q("1"), &q("1")), Err(Error::Domain(_))));
    }

    #[test]
    fn f1_examples() {
        assert_eq!(f1(&q("1"), &q("1"), &q("1/5")).unwrap(), q("25/36"));
        assert_eq!(f1(&q("2"), &q("1"), &q("1")).unwrap(), q("1/2"));
        // eps -> 0 tends to A/|v0|^2
        assert_eq!(f1(&q("1"), &q("1"), &q("0")).unwrap(), q("1"));
        let tiny = q("1/1000000000");
        let diff = q("1") - f1(&q("1"), &q("1"), &tiny).unwrap();
        assert!(diff.is_positive() && diff < q("1/100000000"));
    }

    #[test]
    fn f2_examples() {
        assert_eq!(f2_sq(&q("1"), &q("1/5")).unwrap(), q("96/529"));
        assert_eq!(f2_sq(&q("4"), &q("1")).unwrap(), q("3"));
        assert_eq!(f2_sq(&q("1"), &q("0")).unwrap(), q("0"));
        assert!(f2_sq(&q("1/1000000"), &q("1/1000000000")).unwrap() < q("1/1000"));
        assert!(matches!(f2_sq(&q("2"), &q("1")), Err(Error::Domain(_))));
    }

    #[test]
    fn gap_epsilon_examples() {
        // 1/5 is a valid radius for A = 1, v0 = (1,0): 96/529 < 625/1296.
        assert!(gap_holds(&q("1"), &Vec2::ints(1, 0), &q("1/5")));
        // halving from 1/2: eps = 1/2 gives 3 vs 16/81 (fails); eps = 1/4
        // gives 15/49 vs 256/625 (holds).
        let e = find_gap_epsilon(&q("1"), &Vec2::ints(1, 0)).unwrap();
        assert_eq!(e, q("1/4"));
        assert_eq!(find_gap_epsilon(&q("1"), &Vec2::ints(0, 1)).unwrap(), e);

        let v = Vec2::ints(3, 4);
        let e = find_gap_epsilon(&q("1"), &v).unwrap();
        assert!(e <= q("1"));
        let by_hand = f1(&q("1"), &q("5"), &e).unwrap();
        assert!(f2_sq(&q("25"), &e).unwrap() < by_hand.square());
    }

    fn small_vec() -> impl Strategy<Value = Vec2> {
        (-20i64..=20, -20i64..=20, 1i64..=7)
            .prop_filter("nonzero", |(x, y, _)| *x != 0 || *y != 0)
            .prop_map(|(x, y, d)| Vec2::new(Scalar::ratio(x, d).unwrap(), Scalar::ratio(y, d).unwrap()))
    }

    proptest! {
        #[test]
        fn tan_angle_antisymmetric_and_scale_invariant(u in small_vec(), v in small_vec(), k in 1i64..9) {
            let uv = tan_angle(&u, &v).unwrap();
            let vu = tan_angle(&v, &u).unwrap();
            match (&uv, &vu) {
                (TanAngle::Finite(a), TanAngle::Finite(b)) => prop_assert_eq!(a, &-b),
                (TanAngle::Perpendicular, TanAngle::Perpendicular) => {}
                _ => prop_assert!(false, "asymmetric perpendicularity"),
            }
            prop_assert_eq!(tan_angle(&u, &u).unwrap(), TanAngle::Finite(Scalar::zero()));
            let ku = u.scale(&Scalar::from_int(k));
            prop_assert_eq!(tan_angle(&ku, &v).unwrap(), uv);
        }

        #[test]
        fn bounds_increase_with_eps(v in small_vec(), a in 1i64..50, b in 1i64..50) {
            let n = v.norm_sq();
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(lo != hi);
            // eps = t * |v|_1-ish scale, kept inside the domain
            let scale = n.sqrt_lower(16) / Scalar::from_int(200);
            let e1 = &scale * Scalar::from_int(lo);
            let e2 = &scale * Scalar::from_int(hi);
            prop_assert!(f2_sq(&n, &e1).unwrap() < f2_sq(&n, &e2).unwrap());
            prop_assert!(lemma23_tan_bound_sq(&n, &e1).unwrap() < lemma23_tan_bound_sq(&n, &e2).unwrap());
        }

        #[test]
        fn gap_epsilon_recertifies(v in small_vec(), num in 1i64..40, den in 1i64..10) {
            let area = Scalar::ratio(num, den).unwrap();
            let e = find_gap_epsilon(&area, &v).unwrap();
            prop_assert!(e.is_positive());
            let n = v.norm_sq();
            let r = n.sqrt_upper(NORM_BOUND_BITS);
            prop_assert!(r.square() >= n);
            prop_assert!(f2_sq(&n, &e).unwrap() < f1(&area, &r, &e).unwrap().square());
        }
    }
}
