//! Straight-line flow on exact surfaces.
//!
//! Trajectories are followed polygon by polygon: inside a convex polygon the
//! exit edge is the first edge the ray crosses outward, and the gluing
//! translation carries the exit point into the partner polygon. Positions
//! are exact rationals and lengths are reported squared.

mod periodic;
mod saddle;

pub(crate) use periodic::separatrices;
pub use periodic::{default_dev_bound, periodic_direction, PeriodicReport, PeriodicVerdict, Separatrix};
pub use saddle::{saddle_connections, SaddleConnection};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::surface::{EdgeRef, TranslationSurface};
use crate::vector::Vec2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub polygon: usize,
    pub position: Vec2,
}

impl SurfacePoint {
    pub fn new(polygon: usize, position: Vec2) -> Self {
        SurfacePoint { polygon, position }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceOutcome {
    /// Reached vertex `vertex` of `polygon`, in cone class `class`.
    HitConePoint { length_sq: Scalar, class: usize, polygon: usize, vertex: usize },
    /// Returned to the start point (with the same direction).
    ClosedUp { period_sq: Scalar },
    Survived { length_cap_sq: Scalar },
}

/// A straight piece of trajectory inside one polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub polygon: usize,
    pub from: Vec2,
    pub to: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub outcome: TraceOutcome,
    /// Edges crossed, as the edge left through.
    pub crossings: Vec<EdgeRef>,
    /// Total flow time in units of the direction vector: the developed
    /// displacement is `parameter * direction`.
    pub parameter: Scalar,
    #[serde(skip)]
    pub chords: Vec<Chord>,
}

/// Follow the ray from `start` in `direction` for at most `length_cap`.
///
/// A start on a polygon vertex needs `direction` in that corner's half-open
/// sector `[e_k, -e_{k-1})`; a start on an edge pointing out of the polygon
/// is moved across the gluing first.
pub fn trace(s: &TranslationSurface, start: &SurfacePoint, direction: &Vec2, length_cap: &Scalar) -> Result<Trace> {
    s.require_exact()?;
    if direction.is_zero() {
        return Err(Error::ZeroVector);
    }
    let poly = s.polygons().get(start.polygon).ok_or(Error::StartOutsidePolygon)?;
    let n = poly.len();
    let p = &start.position;
    let sides: Vec<Scalar> = (0..n).map(|k| poly.edge(k).cross(&(p - poly.vertex(k)))).collect();
    if sides.iter().any(Scalar::is_negative) {
        return Err(Error::StartOutsidePolygon);
    }
    let mut here = start.clone();
    if let Some(k) = (0..n).find(|&k| poly.vertex(k) == p) {
        if !Vec2::in_sector(direction, &poly.edge(k), &-poly.edge(k + n - 1)) {
            return Err(Error::StartOutsidePolygon);
        }
    } else if let Some(k) = (0..n).find(|&k| sides[k].is_zero()) {
        if poly.edge(k).cross(direction).is_negative() {
            let e = EdgeRef::new(start.polygon, k);
            let f = s.partner(e).ok_or_else(|| Error::InvalidSurface(format!("edge {e:?} is not glued")))?;
            let tau = s.gluing_translation(e).expect("glued edge");
            here = SurfacePoint::new(f.polygon, p + &tau);
        }
    }
    Ok(follow(s, &here, direction, &length_cap.square(), None))
}

/// Core loop; `classes` is the vertex class table when already computed.
pub(crate) fn follow(
    s: &TranslationSurface,
    start: &SurfacePoint,
    d: &Vec2,
    cap_sq: &Scalar,
    classes: Option<&[Vec<usize>]>,
) -> Trace {
    let owned;
    let classes = match classes {
        Some(c) => c,
        None => {
            owned = s.vertex_class_table();
            &owned
        }
    };
    let d_sq = d.norm_sq();
    let within_cap = |t: &Scalar| &(t.square() * &d_sq) <= cap_sq;
    let start_is_vertex = s.polygon(start.polygon).vertices.contains(&start.position);

    let mut poly_idx = start.polygon;
    let mut pos = start.position.clone();
    let mut total = Scalar::zero();
    let mut crossings = Vec::new();
    let mut chords = Vec::new();
    loop {
        if total.is_positive() && poly_idx == start.polygon && pos == start.position && !start_is_vertex {
            return Trace {
                outcome: TraceOutcome::ClosedUp { period_sq: total.square() * &d_sq },
                crossings,
                parameter: total,
                chords,
            };
        }
        let poly = s.polygon(poly_idx);
        let n = poly.len();
        let mut best: Option<(Scalar, usize)> = None;
        for k in 0..n {
            let e = poly.edge(k);
            let denom = d.cross(&e);
            if !denom.is_positive() {
                continue;
            }
            let t = (poly.vertex(k) - &pos).cross(&e) / denom;
            if !t.is_positive() {
                continue;
            }
            if best.as_ref().is_none_or(|(bt, _)| &t < bt) {
                best = Some((t, k));
            }
        }
        let (t, k) = best.expect("a ray inside a convex polygon leaves it");
        let exit = &pos + &d.scale(&t);
        let vertex = if &exit == poly.vertex(k) {
            Some(k)
        } else if &exit == poly.vertex(k + 1) {
            Some((k + 1) % n)
        } else {
            None
        };

        // return to the start strictly inside this chord
        if !start_is_vertex && poly_idx == start.polygon && vertex.is_none() {
            let off = &start.position - &pos;
            if off.cross(d).is_zero() {
                let u = off.dot(d) / &d_sq;
                if u.is_positive() && u <= t {
                    let at = &total + &u;
                    if !within_cap(&at) {
                        return survived(cap_sq, crossings, total, chords);
                    }
                    chords.push(Chord { polygon: poly_idx, from: pos, to: start.position.clone() });
                    return Trace {
                        outcome: TraceOutcome::ClosedUp { period_sq: at.square() * &d_sq },
                        crossings,
                        parameter: at,
                        chords,
                    };
                }
            }
        }

        let at = &total + &t;
        if !within_cap(&at) {
            return survived(cap_sq, crossings, total, chords);
        }
        chords.push(Chord { polygon: poly_idx, from: pos.clone(), to: exit.clone() });
        if let Some(v) = vertex {
            return Trace {
                outcome: TraceOutcome::HitConePoint {
                    length_sq: at.square() * &d_sq,
                    class: classes[poly_idx][v],
                    polygon: poly_idx,
                    vertex: v,
                },
                crossings,
                parameter: at,
                chords,
            };
        }
        let e = EdgeRef::new(poly_idx, k);
        crossings.push(e);
        let f = s.partner(e).expect("valid surfaces glue every edge");
        let tau = s.gluing_translation(e).expect("glued edge");
        poly_idx = f.polygon;
        pos = &exit + &tau;
        total = at;
    }
}

fn survived(cap_sq: &Scalar, crossings: Vec<EdgeRef>, parameter: Scalar, chords: Vec<Chord>) -> Trace {
    Trace { outcome: TraceOutcome::Survived { length_cap_sq: cap_sq.clone() }, crossings, parameter, chords }
}
