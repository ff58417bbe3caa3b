//! Core holonomies of cylinders of a fixed area, and discreteness gaps
//! around them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{decompose, Cylinder};
use crate::error::{Error, Result};
use crate::flow::saddle_connections;
use crate::inequalities::{find_gap_epsilon, gap_holds};
use crate::scalar::Scalar;
use crate::surface::TranslationSurface;
use crate::vector::Vec2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VEntry {
    pub vector: Vec2,
    pub epsilon: Scalar,
    /// Indices into [`VSet::cylinders`] with this core holonomy.
    pub cylinders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VSet {
    pub area: Scalar,
    pub length_bound: Scalar,
    pub entries: Vec<VEntry>,
    #[serde(skip)]
    pub cylinders: Vec<Cylinder>,
}

impl VSet {
    pub fn vectors(&self) -> Vec<Vec2> {
        self.entries.iter().map(|e| e.vector.clone()).collect()
    }

    pub fn entry(&self, v: &Vec2) -> Option<&VEntry> {
        self.entries.iter().find(|e| &e.vector == v)
    }
}

/// Representative of `±v` with angle in `[0, pi)`.
fn unsigned(v: Vec2) -> Vec2 {
    if v.y.is_negative() || (v.y.is_zero() && v.x.is_negative()) {
        -v
    } else {
        v
    }
}

/// Cores (both orientations) of cylinders with area exactly `area` and core
/// length at most `length`, searched over the directions of saddle
/// connections up to `length`.
pub fn v_set(s: &TranslationSurface, area: &Scalar, length: &Scalar) -> Result<VSet> {
    if !area.is_positive() || !length.is_positive() {
        return Err(Error::Domain("area and length must be positive".into()));
    }
    let mut dirs: Vec<Vec2> = saddle_connections(s, length)?
        .into_iter()
        .map(|c| c.holonomy.primitive().map(unsigned))
        .collect::<Result<_>>()?;
    dirs.sort();
    dirs.dedup();
    let bound_sq = length.square();
    let per_dir: Vec<Vec<Cylinder>> = dirs
        .par_iter()
        .map(|d| match decompose(s, d) {
            Ok(cs) => Ok(cs
                .into_iter()
                .filter(|c| &c.area == area && c.circumference_sq() <= bound_sq)
                .collect()),
            Err(Error::NotPeriodic) => Ok(Vec::new()),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;

    let cylinders: Vec<Cylinder> = per_dir.into_iter().flatten().collect();
    let mut by_vector: BTreeMap<Vec2, Vec<usize>> = BTreeMap::new();
    for (i, c) in cylinders.iter().enumerate() {
        by_vector.entry(c.core_holonomy.clone()).or_default().push(i);
        by_vector.entry(-&c.core_holonomy).or_default().push(i);
    }
    let mut entries = by_vector
        .into_iter()
        .map(|(vector, cylinders)| Ok(VEntry { epsilon: find_gap_epsilon(area, &vector)?, vector, cylinders }))
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| a.vector.norm_sq().cmp(&b.vector.norm_sq()).then_with(|| a.vector.angle_cmp(&b.vector)));
    Ok(VSet { area: area.clone(), length_bound: length.clone(), entries, cylinders })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborCheck {
    pub vector: Vec2,
    pub distance_sq: Scalar,
    pub disjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCertificate {
    pub vector: Vec2,
    pub epsilon: Scalar,
    /// The gap predicate re-checked from scratch.
    pub predicate_holds: bool,
    pub neighbors: Vec<NeighborCheck>,
    pub non_disjoint_pairs: usize,
}

/// Other vectors of `vs` strictly within `epsilon` of `v0`, with whether
/// their cylinders avoid those of `v0`.
pub fn gap_certificate(vs: &VSet, v0: &Vec2) -> Result<GapCertificate> {
    let entry = vs.entry(v0).ok_or(Error::VectorNotInSet)?;
    let eps_sq = entry.epsilon.square();
    let mut neighbors = Vec::new();
    let mut non_disjoint_pairs = 0;
    for other in &vs.entries {
        if &other.vector == v0 {
            continue;
        }
        let distance_sq = (&other.vector - v0).norm_sq();
        if distance_sq >= eps_sq {
            continue;
        }
        let mut disjoint = true;
        for &i in &entry.cylinders {
            for &j in &other.cylinders {
                if i == j || vs.cylinders[i].overlaps(&vs.cylinders[j]) {
                    disjoint = false;
                    non_disjoint_pairs += 1;
                }
            }
        }
        neighbors.push(NeighborCheck { vector: other.vector.clone(), distance_sq, disjoint });
    }
    Ok(GapCertificate {
        vector: v0.clone(),
        epsilon: entry.epsilon.clone(),
        predicate_holds: gap_holds(&vs.area, v0, &entry.epsilon),
        neighbors,
        non_disjoint_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{l_surface, square_torus};

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn torus_vsets() {
        let t = square_torus();
        let vs = v_set(&t, &q("1"), &q("3/2")).unwrap();
        assert_eq!(vs.entries.len(), 8);
        for e in &vs.entries {
            assert!(e.epsilon.is_positive());
            assert_eq!(e.vector.primitive().unwrap(), e.vector);
        }
        assert!(v_set(&t, &q("1/2"), &q("3/2")).unwrap().entries.is_empty());
        for v in [Vec2::ints(1, 0), Vec2::ints(1, 1)] {
            let g = gap_certificate(&vs, &v).unwrap();
            assert!(g.predicate_holds);
            assert!(g.neighbors.is_empty());
        }
        assert_eq!(gap_certificate(&vs, &Vec2::ints(2, 0)), Err(Error::VectorNotInSet));
    }

    #[test]
    fn l_surface_unit_area() {
        let vs = v_set(&l_surface(), &q("1"), &q("3/2")).unwrap();
        let v = vs.vectors();
        assert!(v.contains(&Vec2::ints(1, 0)));
        assert!(v.contains(&Vec2::ints(0, 1)));
    }
}
