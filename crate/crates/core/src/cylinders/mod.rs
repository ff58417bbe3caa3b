//! Maximal cylinders in periodic directions.
//!
//! The surface is mapped by `F^-1`, `F = [[p, -q], [q, p]]` for the primitive
//! direction `(p, q)`, so the direction becomes horizontal. Horizontal
//! separatrices cut every polygon into slabs between consecutive chord
//! levels; following the gluing on each slab's right side permutes the
//! slabs, and each cycle is one cylinder.

mod convex;
mod lemma;
mod vset;

pub use convex::interiors_overlap;
pub use lemma::{lemma22_check, Lemma22};
pub use vset::{gap_certificate, v_set, GapCertificate, NeighborCheck, VEntry, VSet};

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{default_dev_bound, separatrices, SaddleConnection, TraceOutcome};
use crate::scalar::Scalar;
use crate::surface::{EdgeRef, TranslationSurface};
use crate::vector::{Mat2, Vec2};

/// A convex piece of a cylinder inside one polygon.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FootprintPiece {
    pub polygon: usize,
    pub vertices: Vec<Vec2>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    pub direction: Vec2,
    pub core_holonomy: Vec2,
    /// Heights are generally irrational; the square is exact.
    pub height_sq: Scalar,
    pub area: Scalar,
    pub modulus: Scalar,
    pub bottom_boundary: Vec<SaddleConnection>,
    pub top_boundary: Vec<SaddleConnection>,
    pub footprint: Vec<FootprintPiece>,
    #[serde(skip)]
    pub surface: u64,
}

impl Cylinder {
    pub fn circumference_sq(&self) -> Scalar {
        self.core_holonomy.norm_sq()
    }

    /// Footprint pieces with each vertex list rotated to start at its lowest
    /// vertex, sorted; equal for the same open set however it was sliced
    /// along the same direction.
    pub fn normalized_footprint(&self) -> Vec<FootprintPiece> {
        let mut out: Vec<FootprintPiece> = self
            .footprint
            .iter()
            .map(|p| {
                let n = p.vertices.len();
                let low = (0..n).min_by(|&i, &j| (&p.vertices[i].y, &p.vertices[i].x).cmp(&(&p.vertices[j].y, &p.vertices[j].x)));
                let low = low.unwrap_or(0);
                FootprintPiece { polygon: p.polygon, vertices: (0..n).map(|k| p.vertices[(k + low) % n].clone()).collect() }
            })
            .collect();
        out.sort();
        out
    }

    /// Whether the open cylinders share a point.
    pub fn overlaps(&self, other: &Cylinder) -> bool {
        self.footprint.iter().any(|a| {
            other.footprint.iter().any(|b| a.polygon == b.polygon && interiors_overlap(&a.vertices, &b.vertices))
        })
    }

    /// The image under `m` on `apply_matrix(s, m)`: footprints, cores and
    /// boundaries move with the matrix, areas are kept when `det m = 1`.
    pub fn transformed(&self, m: &Mat2, surface: u64) -> Cylinder {
        let det = m.det();
        let core = m.apply(&self.core_holonomy);
        let area = &self.area * det;
        let modulus = &area / &core.norm_sq();
        let height_sq = &modulus.square() * &core.norm_sq();
        let map_sc = |v: &[SaddleConnection]| -> Vec<SaddleConnection> {
            v.iter().map(|c| SaddleConnection { holonomy: m.apply(&c.holonomy), ..c.clone() }).collect()
        };
        Cylinder {
            direction: m.apply(&self.direction).primitive().expect("invertible"),
            core_holonomy: core,
            height_sq,
            area,
            modulus,
            bottom_boundary: map_sc(&self.bottom_boundary),
            top_boundary: map_sc(&self.top_boundary),
            footprint: self
                .footprint
                .iter()
                .map(|p| FootprintPiece { polygon: p.polygon, vertices: p.vertices.iter().map(|v| m.apply(v)).collect() })
                .collect(),
            surface,
        }
    }
}

struct Slab {
    polygon: usize,
    lo: Scalar,
    hi: Scalar,
    /// Horizontal extents `[left, right]` at `lo` and at `hi`.
    bottom: (Scalar, Scalar),
    top: (Scalar, Scalar),
    right_edge: usize,
}

/// Maximal cylinders in `direction`, with the default development bound for
/// the periodicity check.
pub fn decompose(s: &TranslationSurface, direction: &Vec2) -> Result<Vec<Cylinder>> {
    decompose_with_bound(s, direction, None)
}

pub fn decompose_with_bound(s: &TranslationSurface, direction: &Vec2, dev_bound: Option<&Scalar>) -> Result<Vec<Cylinder>> {
    s.require_exact()?;
    s.check_valid()?;
    let dir = direction.primitive()?;
    let frame = Mat2::new(dir.x.clone(), -&dir.y, dir.y.clone(), dir.x.clone())?;
    let dir_sq = dir.norm_sq();
    let bound = match dev_bound {
        Some(b) => b.clone(),
        None => default_dev_bound(s, &dir)?,
    };
    let flat = s.apply_matrix(&frame.inverse())?;
    let horizontal = Vec2::ints(1, 0);
    let seps = separatrices(&flat, &horizontal, &(bound.square() / &dir_sq))?;
    if seps.iter().any(|x| !matches!(x.trace.outcome, TraceOutcome::HitConePoint { .. })) {
        return Err(Error::NotPeriodic);
    }

    // chord levels per polygon, and which forward separatrix owns each chord
    let polys = flat.polygons();
    let mut levels: Vec<BTreeSet<Scalar>> = polys
        .iter()
        .map(|p| {
            let ys = p.vertices.iter().map(|v| v.y.clone());
            let lo = ys.clone().min().expect("non-empty polygon");
            let hi = ys.max().expect("non-empty polygon");
            BTreeSet::from([lo, hi])
        })
        .collect();
    let mut owner: HashMap<(usize, Scalar), usize> = HashMap::new();
    let classes = flat.vertex_class_table();
    let mut forward: Vec<SaddleConnection> = Vec::new();
    for sep in seps.iter().filter(|x| x.direction == horizontal) {
        let id = forward.len();
        let end_class = match sep.trace.outcome {
            TraceOutcome::HitConePoint { class, .. } => class,
            _ => unreachable!("checked above"),
        };
        forward.push(SaddleConnection {
            holonomy: dir.scale(&sep.trace.parameter),
            start_class: classes[sep.polygon][sep.vertex],
            end_class,
            crossings: sep.trace.crossings.clone(),
        });
        for ch in &sep.trace.chords {
            levels[ch.polygon].insert(ch.from.y.clone());
            owner.insert((ch.polygon, ch.from.y.clone()), id);
            // a chord along a horizontal edge also bounds the glued polygon
            let p = &polys[ch.polygon];
            if let Some(k) = (0..p.len()).find(|&k| p.vertex(k) == &ch.from && p.vertex(k + 1) == &ch.to) {
                let e = EdgeRef::new(ch.polygon, k);
                let f = flat.partner(e).expect("valid surface");
                let y = &ch.from.y + &flat.gluing_translation(e).expect("glued").y;
                owner.insert((f.polygon, y), id);
            }
        }
    }

    let mut slabs: Vec<Slab> = Vec::new();
    let mut slab_at: HashMap<(usize, Scalar), usize> = HashMap::new();
    for (pi, lv) in levels.iter().enumerate() {
        let lv: Vec<&Scalar> = lv.iter().collect();
        for w in lv.windows(2) {
            let (lo, hi) = (w[0].clone(), w[1].clone());
            let mid = (&lo + &hi) / Scalar::from_int(2);
            let p = &polys[pi];
            let right_edge = (0..p.len())
                .find(|&k| {
                    let (a, b) = (p.vertex(k), p.vertex(k + 1));
                    a.y < mid && mid < b.y
                })
                .expect("a slab of a convex polygon has a right side");
            slab_at.insert((pi, lo.clone()), slabs.len());
            slabs.push(Slab { polygon: pi, bottom: extent_at(p, &lo), top: extent_at(p, &hi), lo, hi, right_edge });
        }
    }

    let right_of: Vec<usize> = slabs
        .iter()
        .map(|sl| {
            let e = EdgeRef::new(sl.polygon, sl.right_edge);
            let f = flat.partner(e).expect("valid surface");
            let y = &sl.lo + &flat.gluing_translation(e).expect("glued").y;
            slab_at.get(&(f.polygon, y)).copied().ok_or_else(|| Error::InvalidSurface("slabs do not match across a gluing".into()))
        })
        .collect::<Result<_>>()?;

    let mut seen = vec![false; slabs.len()];
    let mut out = Vec::new();
    let fp = s.fingerprint();
    for start in 0..slabs.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = right_of[i];
        }
        let height = &slabs[start].hi - &slabs[start].lo;
        let mut width = Scalar::zero();
        let mut bottom: Vec<usize> = Vec::new();
        let mut top: Vec<usize> = Vec::new();
        let mut footprint = Vec::new();
        for &c in &cycle {
            let sl = &slabs[c];
            debug_assert_eq!(&sl.hi - &sl.lo, height);
            let wb = &sl.bottom.1 - &sl.bottom.0;
            let wt = &sl.top.1 - &sl.top.0;
            width += &((&wb + &wt) / Scalar::from_int(2));
            for (w, level, list) in [(&wb, &sl.lo, &mut bottom), (&wt, &sl.hi, &mut top)] {
                if w.is_positive() {
                    if let Some(&id) = owner.get(&(sl.polygon, level.clone())) {
                        if !list.contains(&id) {
                            list.push(id);
                        }
                    }
                }
            }
            let corners = [
                Vec2::new(sl.bottom.0.clone(), sl.lo.clone()),
                Vec2::new(sl.bottom.1.clone(), sl.lo.clone()),
                Vec2::new(sl.top.1.clone(), sl.hi.clone()),
                Vec2::new(sl.top.0.clone(), sl.hi.clone()),
            ];
            let mut vertices: Vec<Vec2> = Vec::with_capacity(4);
            for v in corners {
                let v = frame.apply(&v);
                if vertices.last() != Some(&v) && vertices.first() != Some(&v) {
                    vertices.push(v);
                }
            }
            footprint.push(FootprintPiece { polygon: sl.polygon, vertices });
        }
        let area = &width * &height * &dir_sq;
        out.push(Cylinder {
            direction: dir.clone(),
            core_holonomy: dir.scale(&width),
            height_sq: height.square() * &dir_sq,
            modulus: &height / &width,
            area,
            bottom_boundary: bottom.into_iter().map(|id| forward[id].clone()).collect(),
            top_boundary: top.into_iter().map(|id| forward[id].clone()).collect(),
            footprint,
            surface: fp,
        });
    }
    Ok(out)
}

/// `[min x, max x]` of the polygon on the horizontal line at `y`.
fn extent_at(p: &crate::surface::Polygon, y: &Scalar) -> (Scalar, Scalar) {
    let mut xs = Vec::new();
    for k in 0..p.len() {
        let (a, b) = (p.vertex(k), p.vertex(k + 1));
        if &a.y == y {
            xs.push(a.x.clone());
        }
        let crosses = (&a.y < y && y < &b.y) || (&b.y < y && y < &a.y);
        if crosses {
            let t = (y - &a.y) / (&b.y - &a.y);
            xs.push(&a.x + &(t * (&b.x - &a.x)));
        }
    }
    let lo = xs.iter().min().expect("line meets polygon").clone();
    let hi = xs.iter().max().expect("line meets polygon").clone();
    (lo, hi)
}
