//! Exact overlap test for convex polygons.

use crate::scalar::Scalar;
use crate::vector::Vec2;

/// Twice the signed area.
fn double_area(p: &[Vec2]) -> Scalar {
    (0..p.len()).map(|i| p[i].cross(&p[(i + 1) % p.len()])).sum()
}

/// Whether the open interiors of two convex polygons meet. Polygons that
/// only share boundary points, or have no interior, do not overlap.
pub fn interiors_overlap(a: &[Vec2], b: &[Vec2]) -> bool {
    if a.len() < 3 || b.len() < 3 || double_area(a).is_zero() || double_area(b).is_zero() {
        return false;
    }
    for poly in [a, b] {
        for i in 0..poly.len() {
            let e = &poly[(i + 1) % poly.len()] - &poly[i];
            if e.is_zero() {
                continue;
            }
            let axis = e.perp();
            let (amin, amax) = extent(a, &axis);
            let (bmin, bmax) = extent(b, &axis);
            if amax <= bmin || bmax <= amin {
                return false;
            }
        }
    }
    true
}

fn extent(p: &[Vec2], axis: &Vec2) -> (Scalar, Scalar) {
    let mut it = p.iter().map(|v| v.dot(axis));
    let first = it.next().expect("non-empty polygon");
    it.fold((first.clone(), first), |(lo, hi), x| {
        if x < lo {
            (x, hi)
        } else if x > hi {
            (lo, x)
        } else {
            (lo, hi)
        }
    })
}
