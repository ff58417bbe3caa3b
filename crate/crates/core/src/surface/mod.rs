//! Translation surfaces as convex polygons glued edge-to-edge by translations.
//!
//! Edge `k` of an `n`-gon runs from vertex `k` to vertex `(k + 1) mod n`.
//! Glued edges carry opposite displacement vectors, so the identification is
//! the translation taking one onto the other with reversed orientation.
//!
//! Surfaces are immutable: every operation returns a new value.

mod cones;
mod delaunay;
mod equivalence;
pub(crate) mod triangulation;
mod validate;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::{Mat2, Vec2};

pub use cones::ConePoint;
pub use delaunay::MAX_FLIPS;
pub use equivalence::{Equivalence, MatchWitness};
pub use validate::{ValidationReport, Violation};

/// Displacement mismatch tolerated between glued edges on the approximate
/// backend.
pub const APPROX_GLUE_TOLERANCE: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Approximate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub polygon: usize,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(polygon: usize, edge: usize) -> Self {
        EdgeRef { polygon, edge }
    }
}

impl Serialize for EdgeRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.polygon, self.edge].serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeRef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [polygon, edge] = <[usize; 2]>::deserialize(d)?;
        Ok(EdgeRef { polygon, edge })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Self {
        Polygon { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, k: usize) -> &Vec2 {
        &self.vertices[k % self.vertices.len()]
    }

    /// Displacement of edge `k`.
    pub fn edge(&self, k: usize) -> Vec2 {
        let n = self.vertices.len();
        &self.vertices[(k + 1) % n] - &self.vertices[k % n]
    }

    pub fn edges(&self) -> impl Iterator<Item = Vec2> + '_ {
        (0..self.len()).map(|k| self.edge(k))
    }

    /// Signed area (shoelace); positive for counterclockwise polygons.
    pub fn area(&self) -> Scalar {
        let n = self.len();
        let twice: Scalar = (0..n).map(|k| self.vertices[k].cross(&self.vertices[(k + 1) % n])).sum();
        twice / Scalar::from_int(2)
    }

    /// Strictly convex, counterclockwise, at least three distinct vertices.
    pub fn is_strictly_convex(&self) -> bool {
        let n = self.len();
        n >= 3 && (0..n).all(|k| self.edge(k).cross(&self.edge(k + 1)).is_positive()) && self.winds_once()
    }

    // Rules out star-shaped polygons whose turns are all left but which wrap
    // around more than once.
    fn winds_once(&self) -> bool {
        let n = self.len();
        let wraps = (0..n)
            .filter(|&k| self.edge(k + 1).angle_cmp(&self.edge(k)) == std::cmp::Ordering::Less)
            .count();
        wraps == 1
    }

    pub fn translate(&self, t: &Vec2) -> Polygon {
        Polygon::new(self.vertices.iter().map(|v| v + t).collect())
    }

    pub fn transform(&self, m: &Mat2) -> Polygon {
        Polygon::new(self.vertices.iter().map(|v| m.apply(v)).collect())
    }

    /// Squared diameter (largest vertex-to-vertex distance).
    pub fn diameter_sq(&self) -> Scalar {
        let mut best = Scalar::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                let d = (a - b).norm_sq();
                if d > best {
                    best = d;
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationSurface {
    polygons: Vec<Polygon>,
    /// Each glued pair once, smaller reference first, sorted.
    pairs: Vec<(EdgeRef, EdgeRef)>,
    partner: Vec<Vec<Option<EdgeRef>>>,
    backend: Backend,
}

impl TranslationSurface {
    /// Assemble a surface. Structural problems (indices out of range, an edge
    /// glued twice or to itself) are errors; geometric ones are left for
    /// [`TranslationSurface::validate`].
    pub fn new(polygons: Vec<Polygon>, pairs: Vec<(EdgeRef, EdgeRef)>, backend: Backend) -> Result<Self> {
        let mut partner: Vec<Vec<Option<EdgeRef>>> = polygons.iter().map(|p| vec![None; p.len()]).collect();
        let mut canonical = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            for e in [a, b] {
                if e.polygon >= polygons.len() || e.edge >= polygons[e.polygon].len() {
                    return Err(Error::InvalidSurface(format!("edge reference {e:?} out of range")));
                }
            }
            if a == b {
                return Err(Error::InvalidSurface(format!("edge {a:?} glued to itself")));
            }
            for (x, y) in [(a, b), (b, a)] {
                let slot = &mut partner[x.polygon][x.edge];
                if slot.is_some() {
                    return Err(Error::InvalidSurface(format!("edge {x:?} glued more than once")));
                }
                *slot = Some(y);
            }
            canonical.push(if a <= b { (a, b) } else { (b, a) });
        }
        canonical.sort();
        Ok(TranslationSurface { polygons, pairs: canonical, partner, backend })
    }

    /// Like [`TranslationSurface::new`] but also requires a valid surface.
    pub fn new_valid(polygons: Vec<Polygon>, pairs: Vec<(EdgeRef, EdgeRef)>, backend: Backend) -> Result<Self> {
        let s = Self::new(polygons, pairs, backend)?;
        s.check_valid()?;
        Ok(s)
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn polygon(&self, i: usize) -> &Polygon {
        &self.polygons[i]
    }

    pub fn pairs(&self) -> &[(EdgeRef, EdgeRef)] {
        &self.pairs
    }

    pub fn partner(&self, e: EdgeRef) -> Option<EdgeRef> {
        self.partner.get(e.polygon).and_then(|p| p.get(e.edge)).copied().flatten()
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn edge_count(&self) -> usize {
        self.polygons.iter().map(Polygon::len).sum()
    }

    pub fn area(&self) -> Scalar {
        self.polygons.iter().map(Polygon::area).sum()
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    pub fn check_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSurface(report.summary()))
        }
    }

    pub(crate) fn require_exact(&self) -> Result<()> {
        match self.backend {
            Backend::Exact => Ok(()),
            Backend::Approximate => Err(Error::ApproximateBackend),
        }
    }

    /// The translation carrying points of edge `e` onto its partner edge.
    pub fn gluing_translation(&self, e: EdgeRef) -> Option<Vec2> {
        let f = self.partner(e)?;
        // start of e is identified with the end of f
        let start = self.polygons[e.polygon].vertex(e.edge);
        let end_f = self.polygons[f.polygon].vertex(f.edge + 1);
        Some(end_f - start)
    }

    /// Image under a linear map of positive determinant; combinatorics unchanged.
    pub fn apply_matrix(&self, m: &Mat2) -> Result<TranslationSurface> {
        if !m.det().is_positive() {
            return Err(Error::NonPositiveDeterminant(m.det().clone()));
        }
        Ok(TranslationSurface {
            polygons: self.polygons.iter().map(|p| p.transform(m)).collect(),
            pairs: self.pairs.clone(),
            partner: self.partner.clone(),
            backend: self.backend,
        })
    }

    /// Same surface with each polygon moved by its own translation.
    pub fn translate_polygons(&self, offsets: &[Vec2]) -> TranslationSurface {
        TranslationSurface {
            polygons: self.polygons.iter().zip(offsets).map(|(p, t)| p.translate(t)).collect(),
            ..self.clone()
        }
    }

    /// Relabel polygons (`order[i]` is the old index of new polygon `i`) and
    /// cyclically shift each polygon's vertex list by `shift[old index]`.
    pub fn relabel(&self, order: &[usize], shift: &[usize]) -> Result<TranslationSurface> {
        let n = self.polygons.len();
        if order.len() != n || shift.len() != n {
            return Err(Error::InvalidSurface("relabeling has the wrong length".into()));
        }
        let mut new_index = vec![usize::MAX; n];
        for (i, &old) in order.iter().enumerate() {
            if old >= n || new_index[old] != usize::MAX {
                return Err(Error::InvalidSurface("relabeling is not a permutation".into()));
            }
            new_index[old] = i;
        }
        let polygons = order
            .iter()
            .map(|&old| {
                let p = &self.polygons[old];
                let s = shift[old] % p.len();
                Polygon::new((0..p.len()).map(|k| p.vertex(k + s).clone()).collect())
            })
            .collect();
        let map = |e: EdgeRef| {
            let len = self.polygons[e.polygon].len();
            let s = shift[e.polygon] % len;
            EdgeRef::new(new_index[e.polygon], (e.edge + len - s) % len)
        };
        let pairs = self.pairs.iter().map(|&(a, b)| (map(a), map(b))).collect();
        TranslationSurface::new(polygons, pairs, self.backend)
    }

    /// Stable content hash used to tie derived objects to their surface.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.polygons.hash(&mut h);
        self.pairs.hash(&mut h);
        self.backend.hash(&mut h);
        h.finish()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SurfaceFile::from(self)).expect("surface serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&SurfaceFile::from(self)).expect("surface serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SurfaceFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("surface JSON at line {} column {}: {e}", e.line(), e.column()))
        })?;
        file.try_into()
    }
}

/// On-disk layout:
/// `{"backend": "exact", "polygons": [{"vertices": [["0","0"], ...]}], "gluings": [[[0,0],[0,2]], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    backend: Backend,
    polygons: Vec<Polygon>,
    gluings: Vec<(EdgeRef, EdgeRef)>,
}

impl From<&TranslationSurface> for SurfaceFile {
    fn from(s: &TranslationSurface) -> Self {
        SurfaceFile { backend: s.backend, polygons: s.polygons.clone(), gluings: s.pairs.clone() }
    }
}

impl TryFrom<SurfaceFile> for TranslationSurface {
    type Error = Error;
    fn try_from(f: SurfaceFile) -> Result<Self> {
        TranslationSurface::new(f.polygons, f.gluings, f.backend)
    }
}

impl Serialize for TranslationSurface {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SurfaceFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TranslationSurface {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SurfaceFile::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}
