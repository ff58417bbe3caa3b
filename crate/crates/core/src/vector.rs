//! Planar vectors and 2x2 matrices over [`Scalar`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vec2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl Vec2 {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Vec2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Vec2::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn zero() -> Self {
        Vec2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, other: &Vec2) -> Scalar {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of the planar cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(&self, other: &Vec2) -> Scalar {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, k: &Scalar) -> Vec2 {
        Vec2::new(&self.x * k, &self.y * k)
    }

    /// Counterclockwise rotation by a right angle.
    pub fn perp(&self) -> Vec2 {
        Vec2::new(-&self.y, self.x.clone())
    }

    pub fn is_parallel(&self, other: &Vec2) -> bool {
        self.cross(other).is_zero()
    }

    /// Positive multiple of `self` with coprime integer coordinates.
    pub fn primitive(&self) -> Result<Vec2> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let l = self.x.denom().lcm(self.y.denom());
        let xi = self.x.numer() * (&l / self.x.denom());
        let yi = self.y.numer() * (&l / self.y.denom());
        let g = xi.gcd(&yi);
        Ok(Vec2::new(Scalar::from(xi / &g), Scalar::from(yi / &g)))
    }

    /// Compare directions by angle in `[0, 2pi)` measured from the positive
    /// x-axis, using only sign tests and cross products.
    pub fn angle_cmp(&self, other: &Vec2) -> Ordering {
        let half = |v: &Vec2| -> u8 {
            if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
                0
            } else {
                1
            }
        };
        half(self).cmp(&half(other)).then_with(|| {
            let c = self.cross(other);
            match c.signum() {
                1 => Ordering::Less,
                -1 => Ordering::Greater,
                _ => Ordering::Equal,
            }
        })
    }

    /// True when `v` lies in the half-open sector swept counterclockwise from
    /// `from` (included) to `to` (excluded); the sector must be narrower than
    /// a half-turn.
    pub fn in_sector(v: &Vec2, from: &Vec2, to: &Vec2) -> bool {
        let a = from.cross(v);
        if a.is_zero() {
            return from.dot(v).is_positive();
        }
        a.is_positive() && v.cross(to).is_positive()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Vec2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.x, &self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[Scalar; 2]>::deserialize(d)?;
        Ok(Vec2::new(x, y))
    }
}

impl<'b> Add<&'b Vec2> for &Vec2 {
    type Output = Vec2;
    fn add(self, o: &'b Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl<'b> Sub<&'b Vec2> for &Vec2 {
    type Output = Vec2;
    fn sub(self, o: &'b Vec2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A matrix in GL2+ (positive determinant), stored row-major:
/// `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    det: Scalar,
}

impl Mat2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_positive() {
            return Err(Error::NonPositiveDeterminant(det));
        }
        Ok(Mat2 { a, b, c, d, det })
    }

    pub fn ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::ints(1, 0, 0, 1).expect("identity")
    }

    /// Columns `u`, `v`: the map sending (1,0) to `u` and (0,1) to `v`.
    pub fn from_columns(u: &Vec2, v: &Vec2) -> Result<Self> {
        Mat2::new(u.x.clone(), v.x.clone(), u.y.clone(), v.y.clone())
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> &Scalar {
        &self.det
    }

    pub fn trace(&self) -> Scalar {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a == 1 && self.b.is_zero() && self.c.is_zero() && self.d == 1
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.a * &o.a + &self.b * &o.c;
        let b = &self.a * &o.b + &self.b * &o.d;
        let c = &self.c * &o.a + &self.d * &o.c;
        let d = &self.c * &o.b + &self.d * &o.d;
        let det = &self.det * &o.det;
        Mat2 { a, b, c, d, det }
    }

    pub fn inverse(&self) -> Mat2 {
        let k = Scalar::one() / &self.det;
        Mat2 {
            a: &self.d * &k,
            b: -&self.b * &k,
            c: -&self.c * &k,
            d: &self.a * &k,
            det: k,
        }
    }

    /// Integer-entry matrices in `[-r, r]`, including singular and
    /// orientation-reversing ones, as raw entry quadruples.
    pub fn integer_box(r: i64) -> impl Iterator<Item = [i64; 4]> {
        let range = move || -r..=r;
        range().flat_map(move |a| {
            range().flat_map(move |b| range().flat_map(move |c| range().map(move |d| [a, b, c, d])))
        })
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[&self.a, &self.b], [&self.c, &self.d]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[Scalar; 2]; 2]>::deserialize(de)?;
        Mat2::new(a, b, c, d).map_err(serde::de::Error::custom)
    }
}
