//! Saddle connections up to a length bound.
//!
//! From every corner of a triangulation the open wedge between the corner's
//! two edges is developed into the plane triangle by triangle. A vertex that
//! lands strictly inside the current wedge is the end of a saddle
//! connection and splits the wedge in two; wedges whose visible part of the
//! far edge is farther than the bound are dropped.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::surface::triangulation::{next, prev, HalfEdge, Triangulation};
use crate::surface::{EdgeRef, TranslationSurface};
use crate::vector::Vec2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaddleConnection {
    pub holonomy: Vec2,
    pub start_class: usize,
    pub end_class: usize,
    /// Polygon edges crossed in order, as the edge left through.
    pub crossings: Vec<EdgeRef>,
}

impl SaddleConnection {
    pub fn length_sq(&self) -> Scalar {
        self.holonomy.norm_sq()
    }
}

struct Wedge {
    /// Half-edge about to be crossed, running from `a` to `b`.
    edge: HalfEdge,
    a: Vec2,
    b: Vec2,
    right: Vec2,
    left: Vec2,
    crossed: Vec<EdgeRef>,
}

/// All saddle connections of length at most `length`, sorted by length,
/// then by angle, then by cone classes.
pub fn saddle_connections(s: &TranslationSurface, length: &Scalar) -> Result<Vec<SaddleConnection>> {
    s.require_exact()?;
    s.check_valid()?;
    let t = Triangulation::from_surface(s);
    let bound_sq = length.square();
    let mut out: Vec<SaddleConnection> = (0..t.len())
        .into_par_iter()
        .flat_map_iter(|tri| (0..3).flat_map(|i| from_corner(&t, (tri, i), &bound_sq)).collect::<Vec<_>>())
        .collect();
    out.sort_by(|x, y| {
        x.length_sq()
            .cmp(&y.length_sq())
            .then_with(|| x.holonomy.angle_cmp(&y.holonomy))
            .then_with(|| (x.start_class, x.end_class).cmp(&(y.start_class, y.end_class)))
            .then_with(|| x.crossings.cmp(&y.crossings))
    });
    Ok(out)
}

fn from_corner(t: &Triangulation, h: HalfEdge, bound_sq: &Scalar) -> Vec<SaddleConnection> {
    let start_class = t.vclass[h.0][h.1];
    let mut found = Vec::new();
    let a = t.vec(h).clone();
    if &a.norm_sq() <= bound_sq {
        found.push(SaddleConnection {
            holonomy: a.clone(),
            start_class,
            end_class: t.vclass[h.0][(h.1 + 1) % 3],
            crossings: Vec::new(),
        });
    }
    let b = -t.vec(prev(h));
    let first = Wedge { edge: next(h), right: a.clone(), left: b.clone(), a, b, crossed: Vec::new() };
    let mut stack = Vec::new();
    if visible_dist_sq(&first).is_some_and(|d| &d <= bound_sq) {
        stack.push(first);
    }
    while let Some(w) = stack.pop() {
        let mut crossed = w.crossed;
        if let Some(e) = t.origin[w.edge.0][w.edge.1] {
            crossed.push(e);
        }
        let g = t.twin(w.edge);
        let ac = next(g);
        let cb = prev(g);
        let c = &w.a + t.vec(ac);
        let in_right = w.right.cross(&c).is_positive();
        let in_left = c.cross(&w.left).is_positive();
        let mut children = Vec::with_capacity(2);
        if in_right && in_left {
            if &c.norm_sq() <= bound_sq {
                found.push(SaddleConnection {
                    holonomy: c.clone(),
                    start_class,
                    end_class: t.vclass[cb.0][cb.1],
                    crossings: crossed.clone(),
                });
            }
            children.push(Wedge {
                edge: ac,
                a: w.a,
                b: c.clone(),
                right: w.right,
                left: c.clone(),
                crossed: crossed.clone(),
            });
            children.push(Wedge { edge: cb, a: c.clone(), b: w.b, right: c, left: w.left, crossed });
        } else if !in_right {
            children.push(Wedge { edge: cb, a: c, b: w.b, right: w.right, left: w.left, crossed });
        } else {
            children.push(Wedge { edge: ac, a: w.a, b: c, right: w.right, left: w.left, crossed });
        }
        for child in children {
            if visible_dist_sq(&child).is_some_and(|d| &d <= bound_sq) {
                stack.push(child);
            }
        }
    }
    found
}

/// Squared distance from the apex to the part of segment `a b` inside the
/// closed wedge, `None` when that part is empty.
fn visible_dist_sq(w: &Wedge) -> Option<Scalar> {
    let ab = &w.b - &w.a;
    let (mut lo, mut hi) = (Scalar::zero(), Scalar::one());
    // c0 + s * c1 >= 0 on the kept part
    for (c0, c1) in [(w.right.cross(&w.a), w.right.cross(&ab)), (w.a.cross(&w.left), ab.cross(&w.left))] {
        if c1.is_zero() {
            if c0.is_negative() {
                return None;
            }
        } else {
            let root = -&c0 / &c1;
            if c1.is_positive() {
                if root > lo {
                    lo = root;
                }
            } else if root < hi {
                hi = root;
            }
        }
    }
    if lo > hi {
        return None;
    }
    let ab_sq = ab.norm_sq();
    let mut s = if ab_sq.is_zero() { lo.clone() } else { -w.a.dot(&ab) / &ab_sq };
    if s < lo {
        s = lo;
    } else if s > hi {
        s = hi;
    }
    Some((&w.a + &ab.scale(&s)).norm_sq())
}
