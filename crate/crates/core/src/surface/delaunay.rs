//! Canonical Delaunay cell decomposition.
//!
//! Lawson flips bring a fan triangulation to a Delaunay one. Triangles that
//! share a circumcircle across an edge are then merged, which removes the
//! choice of diagonal in cocircular cells: the resulting inscribed polygons
//! depend only on the surface. Each cell is translated so its lowest vertex
//! (smallest y, then smallest x) sits at the origin and is listed first.
//! Cells are numbered breadth-first through the gluings from a root cell
//! with the least vertex list, taking the least outcome over all such roots,
//! so equivalent surfaces get identical output.

use std::cmp::Ordering;

use super::triangulation::{next, HalfEdge, Triangulation};
use super::{Backend, EdgeRef, Polygon, TranslationSurface};
use crate::error::{Error, Result};
use crate::vector::Vec2;

/// Safety cap on the number of edge flips.
pub const MAX_FLIPS: usize = 1_000_000;

pub(crate) fn delaunay_triangulation(s: &TranslationSurface) -> Result<Triangulation> {
    s.require_exact()?;
    s.check_valid()?;
    let mut t = Triangulation::from_surface(s);
    let mut stack: Vec<HalfEdge> = (0..t.len()).flat_map(|a| (0..3).map(move |i| (a, i))).collect();
    let mut flips = 0usize;
    while let Some(h) = stack.pop() {
        if t.incircle(h) != Ordering::Greater {
            continue;
        }
        if flips == MAX_FLIPS {
            return Err(Error::NonTermination { flips });
        }
        let u = t.twin(h).0;
        t.flip(h);
        flips += 1;
        stack.extend([(h.0, 1), (h.0, 2), (u, 1), (u, 2)]);
    }
    Ok(t)
}

struct Cell {
    vertices: Vec<Vec2>,
    /// Half-edge of the triangulation carrying each cell edge.
    boundary: Vec<HalfEdge>,
}

impl TranslationSurface {
    /// The canonical Delaunay cell decomposition of the same surface.
    pub fn delaunay_canonical(&self) -> Result<TranslationSurface> {
        let t = delaunay_triangulation(self)?;
        let removable = |h: HalfEdge| t.incircle(h) == Ordering::Equal;

        let n = t.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in 0..n {
            for i in 0..3 {
                let h = (a, i);
                let g = t.twin(h);
                if h < g && removable(h) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, g.0));
                    if ra == rb {
                        return Err(Error::InvalidSurface("cocircular cell is not a disc".into()));
                    }
                    parent[ra] = rb;
                }
            }
        }

        let mut cell_of_root = vec![usize::MAX; n];
        let mut cells: Vec<Cell> = Vec::new();
        let mut cell_of_half: Vec<[Option<(usize, usize)>; 3]> = vec![[None; 3]; n];
        for a in 0..n {
            let root = find(&mut parent, a);
            if cell_of_root[root] != usize::MAX {
                continue;
            }
            let start = match (0..3).map(|i| (a, i)).find(|&h| !removable(h)) {
                Some(h) => h,
                None => {
                    // every edge of this triangle is interior; start from any
                    // triangle of the cell that touches the boundary
                    match (0..n)
                        .filter(|&b| find(&mut parent, b) == root)
                        .flat_map(|b| (0..3).map(move |i| (b, i)))
                        .find(|&h| !removable(h))
                    {
                        Some(h) => h,
                        None => return Err(Error::InvalidSurface("cell without boundary".into())),
                    }
                }
            };
            let idx = cells.len();
            cell_of_root[root] = idx;
            let mut boundary = vec![start];
            let mut h = start;
            loop {
                let mut g = next(h);
                let mut guard = 0;
                while removable(g) {
                    g = next(t.twin(g));
                    guard += 1;
                    if guard > 3 * n {
                        return Err(Error::InvalidSurface("boundary walk does not close".into()));
                    }
                }
                if g == start {
                    break;
                }
                boundary.push(g);
                if boundary.len() > 3 * n {
                    return Err(Error::InvalidSurface("boundary walk does not close".into()));
                }
                h = g;
            }
            let mut pos = Vec2::zero();
            let mut vertices = Vec::with_capacity(boundary.len());
            for &b in &boundary {
                vertices.push(pos.clone());
                pos = &pos + t.vec(b);
            }
            debug_assert!(pos.is_zero());
            let lowest = (0..vertices.len())
                .min_by(|&i, &j| (&vertices[i].y, &vertices[i].x).cmp(&(&vertices[j].y, &vertices[j].x)))
                .expect("cell has vertices");
            let shift = vertices[lowest].clone();
            let m = vertices.len();
            let vertices: Vec<Vec2> = (0..m).map(|k| &vertices[(k + lowest) % m] - &shift).collect();
            let boundary: Vec<HalfEdge> = (0..m).map(|k| boundary[(k + lowest) % m]).collect();
            for (k, &b) in boundary.iter().enumerate() {
                cell_of_half[b.0][b.1] = Some((idx, k));
            }
            cells.push(Cell { vertices, boundary });
        }

        let glued = |ci: usize, k: usize| -> (usize, usize) {
            let b = t.twin(cells[ci].boundary[k]);
            cell_of_half[b.0][b.1].expect("boundary edge glued to boundary edge")
        };
        // Label cells breadth-first from a root with the smallest vertex
        // list, trying every such root and keeping the least result.
        let smallest = cells.iter().map(|c| &c.vertices).min().expect("surface has cells");
        let mut best: Option<(Vec<usize>, Vec<(EdgeRef, EdgeRef)>)> = None;
        for root in (0..cells.len()).filter(|&i| &cells[i].vertices == smallest) {
            let mut rank = vec![usize::MAX; cells.len()];
            let mut order = vec![root];
            rank[root] = 0;
            let mut head = 0;
            while head < order.len() {
                let ci = order[head];
                head += 1;
                for k in 0..cells[ci].boundary.len() {
                    let (cj, _) = glued(ci, k);
                    if rank[cj] == usize::MAX {
                        rank[cj] = order.len();
                        order.push(cj);
                    }
                }
            }
            if order.len() != cells.len() {
                return Err(Error::InvalidSurface("surface is not connected".into()));
            }
            let mut pairs = Vec::new();
            for (ci, cell) in cells.iter().enumerate() {
                for k in 0..cell.boundary.len() {
                    let (cj, kj) = glued(ci, k);
                    let a = EdgeRef::new(rank[ci], k);
                    let other = EdgeRef::new(rank[cj], kj);
                    if a < other {
                        pairs.push((a, other));
                    }
                }
            }
            pairs.sort();
            let better = match &best {
                None => true,
                Some((o, p)) => {
                    let key = |ord: &[usize]| ord.iter().map(|&i| &cells[i].vertices).collect::<Vec<_>>();
                    (key(&order), &pairs) < (key(o), p)
                }
            };
            if better {
                best = Some((order, pairs));
            }
        }
        let (order, pairs) = best.expect("at least one root");
        let polygons = order.iter().map(|&i| Polygon::new(cells[i].vertices.clone())).collect();
        TranslationSurface::new(polygons, pairs, Backend::Exact)
    }
}
