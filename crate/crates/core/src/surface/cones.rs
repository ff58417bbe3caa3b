//! Vertex classes, cone angles and genus.
//!
//! Going counterclockwise around vertex `k` of polygon `p`, the corner runs
//! from the direction of edge `k` to the reverse of edge `k - 1`. Crossing
//! edge `k - 1` lands on the corner at the start of its partner edge, whose
//! direction is exactly where the previous corner stopped. The cone angle is
//! therefore `2 pi` times the number of times this chain of directions passes
//! the positive x-axis, which needs only exact angle comparisons.

use std::cmp::Ordering;

use serde::Serialize;

use super::{Backend, EdgeRef, TranslationSurface};
use crate::error::{Error, Result};

/// A vertex equivalence class with cone angle `2 pi * angle_multiple`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConePoint {
    /// `(polygon, vertex)` corners in counterclockwise order around the point.
    pub corners: Vec<(usize, usize)>,
    pub angle_multiple: u64,
}

/// Partition of all corners into classes, each listed in counterclockwise
/// order. Assumes every edge is glued.
pub(super) fn vertex_classes(s: &TranslationSurface) -> Vec<Vec<(usize, usize)>> {
    let mut seen: Vec<Vec<bool>> = s.polygons.iter().map(|p| vec![false; p.len()]).collect();
    let mut classes = Vec::new();
    for p in 0..s.polygons.len() {
        for k in 0..s.polygons[p].len() {
            if seen[p][k] {
                continue;
            }
            let mut class = Vec::new();
            let (mut cp, mut ck) = (p, k);
            while !seen[cp][ck] {
                seen[cp][ck] = true;
                class.push((cp, ck));
                let n = s.polygons[cp].len();
                let incoming = EdgeRef::new(cp, (ck + n - 1) % n);
                match s.partner(incoming) {
                    Some(f) => (cp, ck) = (f.polygon, f.edge),
                    None => break,
                }
            }
            classes.push(class);
        }
    }
    classes
}

/// Cone angle of a class as a multiple of `2 pi`, or `None` when the corners
/// do not close up to a positive multiple.
pub(super) fn class_angle_multiple(s: &TranslationSurface, class: &[(usize, usize)]) -> Option<u64> {
    match s.backend {
        Backend::Exact => {
            let wraps = class
                .iter()
                .filter(|&&(p, k)| {
                    let poly = &s.polygons[p];
                    let from = poly.edge(k);
                    let to = -poly.edge(k + poly.len() - 1);
                    to.angle_cmp(&from) == Ordering::Less
                })
                .count() as u64;
            (wraps >= 1).then_some(wraps)
        }
        Backend::Approximate => {
            let total: f64 = class
                .iter()
                .map(|&(p, k)| {
                    let poly = &s.polygons[p];
                    let (ax, ay) = poly.edge(k).to_f64();
                    let (bx, by) = (-poly.edge(k + poly.len() - 1)).to_f64();
                    (ax * by - ay * bx).atan2(ax * bx + ay * by)
                })
                .sum();
            let turns = total / std::f64::consts::TAU;
            let rounded = turns.round();
            ((turns - rounded).abs() < 1e-6 && rounded >= 1.0).then_some(rounded as u64)
        }
    }
}

impl TranslationSurface {
    pub fn cone_points(&self) -> Result<Vec<ConePoint>> {
        self.check_valid()?;
        Ok(self.cone_points_unchecked())
    }

    pub(crate) fn cone_points_unchecked(&self) -> Vec<ConePoint> {
        vertex_classes(self)
            .into_iter()
            .map(|corners| {
                let angle_multiple = class_angle_multiple(self, &corners).unwrap_or(0);
                ConePoint { corners, angle_multiple }
            })
            .collect()
    }

    /// `class_of[p][k]`: index of the cone point containing vertex `k` of `p`.
    pub(crate) fn vertex_class_table(&self) -> Vec<Vec<usize>> {
        let mut table: Vec<Vec<usize>> = self.polygons.iter().map(|p| vec![usize::MAX; p.len()]).collect();
        for (i, class) in vertex_classes(self).into_iter().enumerate() {
            for (p, k) in class {
                table[p][k] = i;
            }
        }
        table
    }

    /// Genus from the Euler characteristic `V - E + F` of the glued complex.
    pub fn genus(&self) -> Result<u64> {
        self.check_valid()?;
        let v = vertex_classes(self).len() as i64;
        let e = self.pairs.len() as i64;
        let f = self.polygons.len() as i64;
        let chi = v - e + f;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(Error::InvalidSurface(format!("Euler characteristic {chi} is not that of a closed surface")));
        }
        Ok(((2 - chi) / 2) as u64)
    }
}
