//! Angle test between intersecting maximal cylinders.

use serde::Serialize;

use super::Cylinder;
use crate::error::{Error, Result};
use crate::inequalities::tan_angle;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Lemma22 {
    Disjoint,
    Coincide,
    /// `tan_sq` is `None` for perpendicular cores.
    Holds { tan_sq: Option<Scalar>, bound_sq: Scalar },
    Violation { tan_sq: Scalar, bound_sq: Scalar },
}

impl Lemma22 {
    pub fn is_violation(&self) -> bool {
        matches!(self, Lemma22::Violation { .. })
    }
}

/// For intersecting distinct cylinders, `tan^2` of the angle between cores
/// must exceed the square of the smaller modulus.
pub fn lemma22_check(c1: &Cylinder, c2: &Cylinder) -> Result<Lemma22> {
    if c1.surface != c2.surface {
        return Err(Error::DifferentSurfaces);
    }
    if c1.core_holonomy.is_parallel(&c2.core_holonomy) && c1.normalized_footprint() == c2.normalized_footprint() {
        return Ok(Lemma22::Coincide);
    }
    if !c1.overlaps(c2) {
        return Ok(Lemma22::Disjoint);
    }
    let bound_sq = Scalar::min(&c1.modulus, &c2.modulus).square();
    Ok(match tan_angle(&c1.core_holonomy, &c2.core_holonomy)?.squared() {
        None => Lemma22::Holds { tan_sq: None, bound_sq },
        Some(t) if t > bound_sq => Lemma22::Holds { tan_sq: Some(t), bound_sq },
        Some(t) => Lemma22::Violation { tan_sq: t, bound_sq },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{l_surface, square_torus};
    use crate::cylinders::decompose;
    use crate::vector::Vec2;

    #[test]
    fn torus_examples() {
        let t = square_torus();
        let h = &decompose(&t, &Vec2::ints(1, 0)).unwrap()[0];
        let v = &decompose(&t, &Vec2::ints(0, 1)).unwrap()[0];
        let d = &decompose(&t, &Vec2::ints(1, 1)).unwrap()[0];
        assert_eq!(lemma22_check(h, v).unwrap(), Lemma22::Holds { tan_sq: None, bound_sq: Scalar::one() });
        assert_eq!(
            lemma22_check(h, d).unwrap(),
            Lemma22::Holds { tan_sq: Some(Scalar::one()), bound_sq: Scalar::ratio(1, 4).unwrap() }
        );
        assert_eq!(lemma22_check(h, h).unwrap(), Lemma22::Coincide);
        assert_eq!(lemma22_check(d, d).unwrap(), Lemma22::Coincide);
    }

    #[test]
    fn parallel_cylinders_are_disjoint() {
        let c = decompose(&l_surface(), &Vec2::ints(1, 0)).unwrap();
        assert_eq!(lemma22_check(&c[0], &c[1]).unwrap(), Lemma22::Disjoint);
    }

    #[test]
    fn different_surfaces() {
        let a = &decompose(&square_torus(), &Vec2::ints(1, 0)).unwrap()[0];
        let b = &decompose(&l_surface(), &Vec2::ints(1, 0)).unwrap()[0];
        assert_eq!(lemma22_check(a, b), Err(Error::DifferentSurfaces));
    }
}
