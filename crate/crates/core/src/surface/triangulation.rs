//! Triangulations of a translation surface held as edge vectors.
//!
//! A triangle is three counterclockwise edge vectors summing to zero; where it
//! sits in the plane is irrelevant on a translation surface. Half-edge
//! `(t, i)` is edge `i` of triangle `t`, starting at the triangle's vertex `i`.

use std::cmp::Ordering;

use super::{EdgeRef, TranslationSurface};
use crate::scalar::Scalar;
use crate::vector::Vec2;

pub(crate) type HalfEdge = (usize, usize);

#[derive(Clone, Debug)]
pub(crate) struct Triangulation {
    pub edges: Vec<[Vec2; 3]>,
    pub twin: Vec<[HalfEdge; 3]>,
    /// Cone-point class of the vertex at the start of each edge.
    pub vclass: Vec<[usize; 3]>,
    /// The polygon edge a half-edge lies on, `None` for diagonals.
    pub origin: Vec<[Option<EdgeRef>; 3]>,
}

pub(crate) fn next(h: HalfEdge) -> HalfEdge {
    (h.0, (h.1 + 1) % 3)
}

pub(crate) fn prev(h: HalfEdge) -> HalfEdge {
    (h.0, (h.1 + 2) % 3)
}

impl Triangulation {
    /// Fan-triangulate every polygon from its vertex 0. The surface must be
    /// valid (every edge glued).
    pub fn from_surface(s: &TranslationSurface) -> Triangulation {
        let classes = s.vertex_class_table();
        let mut t = Triangulation { edges: Vec::new(), twin: Vec::new(), vclass: Vec::new(), origin: Vec::new() };
        // polygon edge -> half-edge carrying it
        let mut carrier: Vec<Vec<HalfEdge>> = s.polygons.iter().map(|p| vec![(0, 0); p.len()]).collect();
        for (pi, poly) in s.polygons.iter().enumerate() {
            let n = poly.len();
            let base = t.edges.len();
            let v0 = poly.vertex(0);
            for i in 1..n - 1 {
                let (vi, vj) = (poly.vertex(i), poly.vertex(i + 1));
                t.edges.push([vi - v0, vj - vi, v0 - vj]);
                t.vclass.push([classes[pi][0], classes[pi][i], classes[pi][(i + 1) % n]]);
                let idx = base + i - 1;
                let first = if i == 1 { Some(EdgeRef::new(pi, 0)) } else { None };
                let last = if i == n - 2 { Some(EdgeRef::new(pi, n - 1)) } else { None };
                t.origin.push([first, Some(EdgeRef::new(pi, i)), last]);
                // diagonals to the neighbouring fan triangles
                let before = if i == 1 { (usize::MAX, 0) } else { (idx - 1, 2) };
                let after = if i == n - 2 { (usize::MAX, 0) } else { (idx + 1, 0) };
                t.twin.push([before, (usize::MAX, 0), after]);
                carrier[pi][i] = (idx, 1);
                if i == 1 {
                    carrier[pi][0] = (idx, 0);
                }
                if i == n - 2 {
                    carrier[pi][n - 1] = (idx, 2);
                }
            }
        }
        for &(a, b) in s.pairs() {
            let ha = carrier[a.polygon][a.edge];
            let hb = carrier[b.polygon][b.edge];
            t.twin[ha.0][ha.1] = hb;
            t.twin[hb.0][hb.1] = ha;
        }
        t
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn vec(&self, h: HalfEdge) -> &Vec2 {
        &self.edges[h.0][h.1]
    }

    pub fn twin(&self, h: HalfEdge) -> HalfEdge {
        self.twin[h.0][h.1]
    }

    /// Position of the opposite apex `S` of the neighbouring triangle relative
    /// to the incircle of triangle `P Q R`, where `h` runs from `P` to `Q`.
    /// `Greater` means strictly inside (the edge should be flipped), `Equal`
    /// cocircular.
    pub fn incircle(&self, h: HalfEdge) -> Ordering {
        let q = self.vec(h).clone();
        let r = &q + self.vec(next(h));
        let s = self.vec(next(self.twin(h))).clone();
        let det = incircle_det(&q, &r, &s);
        det.signum().cmp(&0)
    }

    /// Replace the diagonal `h` of the quadrilateral formed with its twin by
    /// the other diagonal. Requires the quadrilateral to be strictly convex.
    pub fn flip(&mut self, h: HalfEdge) {
        let (t, i) = h;
        let (u, j) = self.twin(h);
        debug_assert_ne!(t, u, "a triangle edge cannot be glued to the same triangle");
        // T: P -a-> Q -b-> R -c-> P ; U: Q -(-a)-> P -d-> S -e-> Q
        let b = self.edges[t][(i + 1) % 3].clone();
        let c = self.edges[t][(i + 2) % 3].clone();
        let d = self.edges[u][(j + 1) % 3].clone();
        let e = self.edges[u][(j + 2) % 3].clone();
        let (cp, cq, cr) = (self.vclass[t][i], self.vclass[t][(i + 1) % 3], self.vclass[t][(i + 2) % 3]);
        let cs = self.vclass[u][(j + 2) % 3];
        let outer_old = [(t, (i + 2) % 3), (u, (j + 1) % 3), (u, (j + 2) % 3), (t, (i + 1) % 3)];
        let outer_new = [(t, 1), (t, 2), (u, 1), (u, 2)];
        let old_twins: Vec<HalfEdge> = outer_old.iter().map(|&x| self.twin(x)).collect();
        let old_origin: Vec<Option<EdgeRef>> = outer_old.iter().map(|&(a, k)| self.origin[a][k]).collect();

        // S + e = Q and Q + b = R, so S -> R is e + b.
        let diag = &e + &b;
        // T' = [S->R, R->P, P->S], U' = [R->S, S->Q, Q->R]
        self.edges[t] = [diag.clone(), c, d];
        self.edges[u] = [-diag, e, b];
        self.vclass[t] = [cs, cr, cp];
        self.vclass[u] = [cr, cs, cq];
        self.origin[t] = [None, old_origin[0], old_origin[1]];
        self.origin[u] = [None, old_origin[2], old_origin[3]];
        self.twin[t][0] = (u, 0);
        self.twin[u][0] = (t, 0);
        let remap = |x: HalfEdge| -> HalfEdge {
            match outer_old.iter().position(|&o| o == x) {
                Some(k) => outer_new[k],
                None => x,
            }
        };
        for k in 0..4 {
            let partner = remap(old_twins[k]);
            let me = outer_new[k];
            self.twin[me.0][me.1] = partner;
            self.twin[partner.0][partner.1] = me;
        }
    }
}

/// `> 0` iff `s` lies strictly inside the circle through `0, q, r`
/// (counterclockwise).
pub(crate) fn incircle_det(q: &Vec2, r: &Vec2, s: &Vec2) -> Scalar {
    let (nq, nr, ns) = (q.norm_sq(), r.norm_sq(), s.norm_sq());
    // with a triangle vertex (not the query point) at the origin the usual
    // determinant changes sign
    -(&q.x * (&r.y * &ns - &nr * &s.y) - &q.y * (&r.x * &ns - &nr * &s.x) + &nq * (&r.x * &s.y - &r.y * &s.x))
}
