//! Unfolding of the rhombus with acute angle `alpha`.
//!
//! Copies are indexed by the group generated by the reflections in the two
//! side directions. An element is `(k, reflected)`, acting linearly as
//! rotation by `2 k alpha`, preceded by the reflection in the x-axis when
//! `reflected`. Side `s` of copy `g` is glued to side `s` of copy `g r_s`,
//! where `r_s` is the reflection fixing the direction of side `s`.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::Serialize;

use crate::approx::ApproxScalar;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::surface::{Backend, EdgeRef, Polygon, TranslationSurface};
use crate::vector::Vec2;

/// Default cap on the number of reflected copies.
pub const MAX_RHOMBUS_COPIES: usize = 64;

/// Two copies are the same when their rotation angles agree to this
/// tolerance modulo `2 pi`.
const ANGLE_TOLERANCE: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhombusUnfolding {
    pub surface: TranslationSurface,
    /// `(k, reflected)` for each copy, in polygon order.
    pub copies: Vec<(i64, bool)>,
    /// Set when the group closure hit the copy cap; the remaining sides are
    /// left unglued.
    pub non_closing: bool,
}

pub fn unfold_rhombus(alpha: &ApproxScalar) -> Result<RhombusUnfolding> {
    unfold_rhombus_capped(alpha, MAX_RHOMBUS_COPIES)
}

pub fn unfold_rhombus_capped(alpha: &ApproxScalar, cap: usize) -> Result<RhombusUnfolding> {
    if !(alpha.lower() > 0.0 && alpha.upper() < FRAC_PI_2) {
        return Err(Error::AngleOutOfRange);
    }
    let a = alpha.value;
    let angle = |k: i64| (2.0 * k as f64 * a).rem_euclid(TAU);
    let same_angle = |x: f64, y: f64| {
        let d = (x - y).rem_euclid(TAU);
        d.min(TAU - d) <= ANGLE_TOLERANCE
    };

    let mut copies: Vec<(i64, bool)> = vec![(0, false)];
    let find = |copies: &[(i64, bool)], g: (i64, bool)| {
        copies.iter().position(|&(k, f)| f == g.1 && same_angle(angle(k), angle(g.0)))
    };
    // right multiplication by r0 (sides 0, 2) and r1 (sides 1, 3)
    let times = |g: (i64, bool), side: usize| -> (i64, bool) {
        match (side % 2, g.1) {
            (0, f) => (g.0, !f),
            (_, false) => (g.0 + 1, true),
            (_, true) => (g.0 - 1, false),
        }
    };
    let mut non_closing = false;
    let mut i = 0;
    while i < copies.len() {
        for side in 0..2 {
            let h = times(copies[i], side);
            if find(&copies, h).is_none() {
                if copies.len() == cap {
                    non_closing = true;
                } else {
                    copies.push(h);
                }
            }
        }
        i += 1;
    }

    let base = [(0.0, 0.0), (1.0, 0.0), (1.0 + a.cos(), a.sin()), (a.cos(), a.sin())];
    let polygons: Vec<Polygon> = copies
        .iter()
        .enumerate()
        .map(|(idx, &(k, f))| {
            let (c, s) = (angle(k).cos(), angle(k).sin());
            let offset = 3.0 * idx as f64;
            let mut pts: Vec<Vec2> = base
                .iter()
                .map(|&(x, y)| {
                    let y = if f { -y } else { y };
                    let (px, py) = (c * x - s * y + offset, s * x + c * y);
                    Vec2::new(dyadic(px), dyadic(py))
                })
                .collect();
            if f {
                pts.reverse();
            }
            Polygon::new(pts)
        })
        .collect();

    // side s of the rhombus is edge s of an unreflected copy; reversing the
    // vertex order of a reflected copy makes it edge (2 - s) mod 4
    let edge_of = |f: bool, side: usize| if f { (6 - side) % 4 } else { side };
    let mut pairs = Vec::new();
    for (idx, &g) in copies.iter().enumerate() {
        for side in 0..4 {
            if let Some(j) = find(&copies, times(g, side)) {
                let a = EdgeRef::new(idx, edge_of(g.1, side));
                let b = EdgeRef::new(j, edge_of(copies[j].1, side));
                if a < b {
                    pairs.push((a, b));
                }
            }
        }
    }
    let surface = TranslationSurface::new(polygons, pairs, Backend::Approximate)?;
    Ok(RhombusUnfolding { surface, copies, non_closing })
}

fn dyadic(x: f64) -> Scalar {
    Scalar::from_f64(x).expect("finite coordinate")
}
