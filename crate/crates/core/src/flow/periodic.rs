//! Periodicity of a direction: every separatrix in direction `±d` must end
//! at a cone point within the development bound.

use serde::Serialize;

use super::{follow, SurfacePoint, Trace, TraceOutcome};
use crate::error::{Error, Result};
use crate::finiteness::{classify_finite_surface, DiameterBound};
use crate::scalar::Scalar;
use crate::surface::TranslationSurface;
use crate::vector::Vec2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodicVerdict {
    Periodic,
    NotClosedWithinBound,
}

/// The outgoing ray at corner `vertex` of `polygon` in `direction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separatrix {
    pub polygon: usize,
    pub vertex: usize,
    pub direction: Vec2,
    pub trace: Trace,
}

impl Separatrix {
    pub fn holonomy(&self) -> Vec2 {
        self.direction.scale(&self.trace.parameter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicReport {
    pub direction: Vec2,
    pub dev_bound: Scalar,
    pub verdict: PeriodicVerdict,
    pub separatrices: Vec<Separatrix>,
}

impl PeriodicReport {
    pub fn is_periodic(&self) -> bool {
        self.verdict == PeriodicVerdict::Periodic
    }
}

/// `4 D (1 + |p|^2)` for a diameter bound `D` and the primitive integer
/// vector `p` along `d`.
pub fn default_dev_bound(s: &TranslationSurface, d: &Vec2) -> Result<Scalar> {
    let prim = d.primitive()?;
    let diam = match classify_finite_surface(s)?.diameter_upper_bound.value {
        DiameterBound::Bounded { value } => value,
        DiameterBound::Unbounded => return Err(Error::Domain("surface has no diameter bound".into())),
    };
    Ok(Scalar::from_int(4) * diam * (Scalar::one() + prim.norm_sq()))
}

/// Trace all separatrices in directions `d` and `-d` up to `dev_bound`
/// (the default bound when `None`).
pub fn periodic_direction(s: &TranslationSurface, d: &Vec2, dev_bound: Option<&Scalar>) -> Result<PeriodicReport> {
    s.require_exact()?;
    s.check_valid()?;
    let bound = match dev_bound {
        Some(b) => b.clone(),
        None => default_dev_bound(s, d)?,
    };
    let separatrices = separatrices(s, d, &bound.square())?;
    let closed = separatrices.iter().all(|x| matches!(x.trace.outcome, TraceOutcome::HitConePoint { .. }));
    Ok(PeriodicReport {
        direction: d.clone(),
        dev_bound: bound,
        verdict: if closed { PeriodicVerdict::Periodic } else { PeriodicVerdict::NotClosedWithinBound },
        separatrices,
    })
}

/// Separatrices leaving every corner whose half-open sector contains `d` or
/// `-d`, forward ones first, each followed for squared length `cap_sq`.
pub(crate) fn separatrices(s: &TranslationSurface, d: &Vec2, cap_sq: &Scalar) -> Result<Vec<Separatrix>> {
    if d.is_zero() {
        return Err(Error::ZeroVector);
    }
    let classes = s.vertex_class_table();
    let mut out = Vec::new();
    for dir in [d.clone(), -d] {
        for (pi, poly) in s.polygons().iter().enumerate() {
            let n = poly.len();
            for k in 0..n {
                if !Vec2::in_sector(&dir, &poly.edge(k), &-poly.edge(k + n - 1)) {
                    continue;
                }
                let start = SurfacePoint::new(pi, poly.vertex(k).clone());
                let trace = follow(s, &start, &dir, cap_sq, Some(&classes));
                out.push(Separatrix { polygon: pi, vertex: k, direction: dir.clone(), trace });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{l_surface, square_torus};

    #[test]
    fn rational_directions_on_square_tiled_surfaces() {
        for s in [square_torus(), l_surface()] {
            for (x, y) in [(1, 0), (0, 1), (1, 1), (2, 3), (-3, 1)] {
                let r = periodic_direction(&s, &Vec2::ints(x, y), None).unwrap();
                assert!(r.is_periodic(), "({x},{y})");
                let cones: usize = s.cone_points().unwrap().iter().map(|c| c.angle_multiple as usize).sum();
                assert_eq!(r.separatrices.len(), 2 * cones);
            }
        }
    }

    #[test]
    fn separatrix_lengths_on_torus() {
        let r = periodic_direction(&square_torus(), &Vec2::ints(2, 3), None).unwrap();
        for sep in &r.separatrices {
            match &sep.trace.outcome {
                TraceOutcome::HitConePoint { length_sq, .. } => assert_eq!(length_sq, &Scalar::from_int(13)),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn small_bound_is_not_enough() {
        let r = periodic_direction(&square_torus(), &Vec2::ints(5, 7), Some(&Scalar::one())).unwrap();
        assert_eq!(r.verdict, PeriodicVerdict::NotClosedWithinBound);
    }
}
