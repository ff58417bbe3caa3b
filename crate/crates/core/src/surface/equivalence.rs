//! Translation equivalence of surfaces via their canonical Delaunay cells.
//!
//! Canonical cells have their lowest vertex at the origin, so a translation
//! between two cells is only possible when their vertex lists coincide, and
//! it then preserves edge indices. Fixing the image of one cell determines
//! the whole matching by following gluings.

use std::collections::VecDeque;

use serde::Serialize;

use super::{Backend, EdgeRef, TranslationSurface};
use crate::error::{Error, Result};

/// `cell_map[i]` is the canonical cell of the second surface that cell `i`
/// of the first is translated onto.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchWitness {
    pub cell_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent { witness: MatchWitness },
    NotEquivalent { reason: String },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

impl TranslationSurface {
    /// Whether a translation-equivalence (derivative identity) maps `self`
    /// onto `other`, respecting marked points.
    pub fn equivalent(&self, other: &TranslationSurface) -> Result<bool> {
        Ok(self.equivalence(other)?.is_equivalent())
    }

    pub fn equivalence(&self, other: &TranslationSurface) -> Result<Equivalence> {
        if self.backend != other.backend {
            return Err(Error::BackendMismatch);
        }
        if self.backend == Backend::Approximate {
            return Err(Error::ApproximateBackend);
        }
        let a = self.delaunay_canonical()?;
        let b = other.delaunay_canonical()?;
        Ok(match_canonical(&a, &b))
    }
}

pub(crate) fn match_canonical(a: &TranslationSurface, b: &TranslationSurface) -> Equivalence {
    let not = |reason: &str| Equivalence::NotEquivalent { reason: reason.into() };
    if a.polygons.len() != b.polygons.len() {
        return not("different numbers of Delaunay cells");
    }
    if a.area() != b.area() {
        return not("different areas");
    }
    let mut sa: Vec<_> = a.polygons.iter().collect();
    let mut sb: Vec<_> = b.polygons.iter().collect();
    sa.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    sb.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    if sa != sb {
        return not("different Delaunay cell shapes");
    }
    if a.polygons.is_empty() {
        return Equivalence::Equivalent { witness: MatchWitness { cell_map: Vec::new() } };
    }
    for root in 0..b.polygons.len() {
        if b.polygons[root] != a.polygons[0] {
            continue;
        }
        if let Some(cell_map) = propagate(a, b, root) {
            return Equivalence::Equivalent { witness: MatchWitness { cell_map } };
        }
    }
    not("no cell matching is compatible with the gluings")
}

fn propagate(a: &TranslationSurface, b: &TranslationSurface, root: usize) -> Option<Vec<usize>> {
    let n = a.polygons.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = root;
    used[root] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let j = map[i];
        for k in 0..a.polygons[i].len() {
            let fa = a.partner(EdgeRef::new(i, k))?;
            let fb = b.partner(EdgeRef::new(j, k))?;
            if fa.edge != fb.edge || a.polygons[fa.polygon] != b.polygons[fb.polygon] {
                return None;
            }
            if map[fa.polygon] == usize::MAX {
                if used[fb.polygon] {
                    return None;
                }
                map[fa.polygon] = fb.polygon;
                used[fb.polygon] = true;
                queue.push_back(fa.polygon);
            } else if map[fa.polygon] != fb.polygon {
                return None;
            }
        }
    }
    // connected surfaces reach every cell
    map.iter().all(|&m| m != usize::MAX).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::surface::Polygon;
    use crate::vector::{Mat2, Vec2};

    fn rect(a: i64, b: i64) -> TranslationSurface {
        let p = Polygon::new(vec![Vec2::ints(0, 0), Vec2::ints(a, 0), Vec2::ints(a, b), Vec2::ints(0, b)]);
        TranslationSurface::new(
            vec![p],
            vec![(EdgeRef::new(0, 0), EdgeRef::new(0, 2)), (EdgeRef::new(0, 1), EdgeRef::new(0, 3))],
            Backend::Exact,
        )
        .unwrap()
    }

    #[test]
    fn lattice_examples() {
        assert!(!rect(1, 2).equivalent(&rect(2, 1)).unwrap());
        let t = rect(1, 1);
        assert!(t.equivalent(&t.apply_matrix(&Mat2::ints(1, 1, 0, 1).unwrap()).unwrap()).unwrap());
        let half = Scalar::ratio(1, 2).unwrap();
        let squeeze = Mat2::new(Scalar::from_int(2), Scalar::zero(), Scalar::zero(), half).unwrap();
        assert!(!t.equivalent(&t.apply_matrix(&squeeze).unwrap()).unwrap());
        // the 1x2 torus is the 2x1 torus rotated, hence equivalent after rotating
        let rot = Mat2::ints(0, -1, 1, 0).unwrap();
        assert!(rect(1, 2).apply_matrix(&rot).unwrap().equivalent(&rect(2, 1)).unwrap());
    }

    #[test]
    fn relabeled_copy_is_equivalent() {
        let t = rect(3, 2);
        let r = t.relabel(&[0], &[3]).unwrap().translate_polygons(&[Vec2::ints(5, -7)]);
        match t.equivalence(&r).unwrap() {
            Equivalence::Equivalent { witness } => assert_eq!(witness.cell_map, vec![0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn backend_mismatch() {
        let t = rect(1, 1);
        let approx = TranslationSurface::new(t.polygons.clone(), t.pairs.clone(), Backend::Approximate).unwrap();
        assert_eq!(t.equivalent(&approx), Err(Error::BackendMismatch));
    }
}
