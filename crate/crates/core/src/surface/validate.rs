use std::fmt;

use serde::Serialize;

use super::{Backend, EdgeRef, TranslationSurface, APPROX_GLUE_TOLERANCE};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooFewVertices { polygon: usize },
    RepeatedVertex { polygon: usize },
    NotStrictlyConvex { polygon: usize },
    UnmatchedEdge { edge: EdgeRef },
    /// Glued edges whose displacements are not opposite (length or direction
    /// mismatch), so the identification is not a translation.
    NotTranslation { a: EdgeRef, b: EdgeRef },
    Disconnected { components: usize },
    BadConeAngle { corner: EdgeRef },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { polygon } => write!(f, "polygon {polygon} has fewer than 3 vertices"),
            Violation::RepeatedVertex { polygon } => write!(f, "polygon {polygon} repeats a vertex"),
            Violation::NotStrictlyConvex { polygon } => {
                write!(f, "polygon {polygon} is not strictly convex and counterclockwise")
            }
            Violation::UnmatchedEdge { edge } => write!(f, "edge {edge:?} is not glued"),
            Violation::NotTranslation { a, b } => {
                write!(f, "edges {a:?} and {b:?} do not have opposite displacements")
            }
            Violation::Disconnected { components } => write!(f, "surface has {components} components"),
            Violation::BadConeAngle { corner } => {
                write!(f, "vertex class through {corner:?} has angle not a multiple of 2pi")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.is_valid() {
            return "valid".into();
        }
        self.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    }
}

pub(super) fn validate(s: &TranslationSurface) -> ValidationReport {
    let mut v = Vec::new();
    let mut shapes_ok = true;
    for (i, p) in s.polygons.iter().enumerate() {
        if p.len() < 3 {
            v.push(Violation::TooFewVertices { polygon: i });
            shapes_ok = false;
            continue;
        }
        let mut seen = p.vertices.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != p.len() {
            v.push(Violation::RepeatedVertex { polygon: i });
            shapes_ok = false;
        }
        if !p.is_strictly_convex() {
            v.push(Violation::NotStrictlyConvex { polygon: i });
            shapes_ok = false;
        }
    }

    let mut glue_ok = true;
    for (pi, p) in s.polygons.iter().enumerate() {
        for k in 0..p.len() {
            if s.partner[pi][k].is_none() {
                v.push(Violation::UnmatchedEdge { edge: EdgeRef::new(pi, k) });
                glue_ok = false;
            }
        }
    }
    for &(a, b) in &s.pairs {
        let ea = s.polygons[a.polygon].edge(a.edge);
        let eb = s.polygons[b.polygon].edge(b.edge);
        let opposite = match s.backend {
            Backend::Exact => (&ea + &eb).is_zero(),
            Backend::Approximate => {
                let (x, y) = (&ea + &eb).to_f64();
                x.abs() <= APPROX_GLUE_TOLERANCE && y.abs() <= APPROX_GLUE_TOLERANCE
            }
        };
        if !opposite {
            v.push(Violation::NotTranslation { a, b });
            glue_ok = false;
        }
    }

    let components = component_count(s);
    if components > 1 {
        v.push(Violation::Disconnected { components });
    }

    // Cone angles only make sense once polygons and gluings are sound.
    if shapes_ok && glue_ok {
        for class in super::cones::vertex_classes(s) {
            if super::cones::class_angle_multiple(s, &class).is_none() {
                let (p, k) = class[0];
                v.push(Violation::BadConeAngle { corner: EdgeRef::new(p, k) });
            }
        }
    }
    ValidationReport { violations: v }
}

fn component_count(s: &TranslationSurface) -> usize {
    let n = s.polygons.len();
    if n == 0 {
        return 0;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in &s.pairs {
        let (ra, rb) = (find(&mut parent, a.polygon), find(&mut parent, b.polygon));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}
