//! Finite truncations of the stack-of-boxes surface.
//!
//! Rectangle `R_n = [0, w_n] x [y_n, y_n + h_n]` sits directly on top of
//! `R_{n-1}`, left-aligned. Left and right sides of each box are glued; the
//! part of the top of `R_n` overhanging `R_{n+1}` (`w_{n+1} < x < w_n`) is
//! glued to the bottom of `R_1` over the same interval, and the whole top of
//! the last box closes up against the remaining strip `0 < x < w_N`.

use std::collections::HashMap;

use serde::Serialize;

use super::sequence::SequenceSpec;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::surface::{Backend, EdgeRef, Polygon, TranslationSurface};
use crate::vector::Vec2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackTruncation {
    pub surface: TranslationSurface,
    pub levels: usize,
    pub h_spec: SequenceSpec,
    pub w_spec: SequenceSpec,
    pub heights: Vec<Scalar>,
    pub widths: Vec<Scalar>,
}

impl StackTruncation {
    /// `sum h_n w_n` over the boxes, which is also the surface area.
    pub fn box_area(&self) -> Scalar {
        self.heights.iter().zip(&self.widths).map(|(h, w)| h * w).sum()
    }
}

pub fn stack_of_boxes(h: &SequenceSpec, w: &SequenceSpec, levels: usize) -> Result<StackTruncation> {
    if levels == 0 {
        return Err(Error::Domain("a stack needs at least one box".into()));
    }
    if levels > 1 && !w.exponent().is_negative() {
        return Err(Error::WidthNotDecreasing);
    }
    let eval = |spec: &SequenceSpec, n: usize| {
        spec.value(n as u64).ok_or_else(|| {
            Error::SpecOutOfScope(format!("{spec} is irrational at n = {n}; truncations need rational box sizes"))
        })
    };
    let heights = (1..=levels).map(|n| eval(h, n)).collect::<Result<Vec<_>>>()?;
    let widths = (1..=levels).map(|n| eval(w, n)).collect::<Result<Vec<_>>>()?;
    let surface = build(&heights, &widths)?;
    Ok(StackTruncation { surface, levels, h_spec: h.clone(), w_spec: w.clone(), heights, widths })
}

fn build(heights: &[Scalar], widths: &[Scalar]) -> Result<TranslationSurface> {
    let n_boxes = heights.len();
    if widths.windows(2).any(|p| p[1] >= p[0]) {
        return Err(Error::WidthNotDecreasing);
    }
    let z = Scalar::zero();
    let mut bottoms = Vec::with_capacity(n_boxes);
    let mut tops = Vec::with_capacity(n_boxes);
    let mut y = Scalar::zero();
    for n in 0..n_boxes {
        bottoms.push(y.clone());
        y = &y + &heights[n];
        tops.push(y.clone());
    }

    let mut polygons: Vec<Polygon> = Vec::new();
    let mut level: Vec<usize> = Vec::new();
    for n in 0..n_boxes {
        let w = &widths[n];
        let pt = |x: &Scalar, y: &Scalar| Vec2::new(x.clone(), y.clone());
        let mut bottom = vec![z.clone()];
        if n == 0 {
            // split where the overhang of each higher box starts
            bottom.extend(widths[1..].iter().rev().cloned());
        }
        bottom.push(w.clone());
        let mut top = vec![z.clone()];
        if n + 1 < n_boxes {
            top.push(widths[n + 1].clone());
        }
        top.push(w.clone());
        let b: Vec<Vec2> = bottom.iter().map(|x| pt(x, &bottoms[n])).collect();
        let t: Vec<Vec2> = top.iter().map(|x| pt(x, &tops[n])).collect();
        for piece in strip_pieces(&b, &t) {
            polygons.push(piece);
            level.push(n);
        }
    }

    let mut by_segment: HashMap<(Vec2, Vec2), EdgeRef> = HashMap::new();
    for (pi, p) in polygons.iter().enumerate() {
        for k in 0..p.len() {
            by_segment.insert((p.vertex(k).clone(), p.vertex(k + 1).clone()), EdgeRef::new(pi, k));
        }
    }
    let mut pairs = Vec::new();
    for (pi, p) in polygons.iter().enumerate() {
        let n = level[pi];
        for k in 0..p.len() {
            let (s, t) = (p.vertex(k), p.vertex(k + 1));
            let shift = gluing_shift(s, t, n, widths, &tops);
            let key = (t + &shift, s + &shift);
            let partner = *by_segment
                .get(&key)
                .ok_or_else(|| Error::InvalidSurface(format!("no partner for stack edge {s} -> {t}")))?;
            let me = EdgeRef::new(pi, k);
            if me < partner {
                pairs.push((me, partner));
            }
        }
    }
    TranslationSurface::new_valid(polygons, pairs, Backend::Exact)
}

/// Translation taking the segment `s -> t` of a piece of box `n` onto its
/// partner.
fn gluing_shift(s: &Vec2, t: &Vec2, n: usize, widths: &[Scalar], tops: &[Scalar]) -> Vec2 {
    let z = Scalar::zero();
    let w = &widths[n];
    if s.x == t.x && s.x.is_zero() {
        return Vec2::new(w.clone(), z);
    }
    if s.x == t.x && &s.x == w {
        return Vec2::new(-w, z);
    }
    if s.y == t.y && s.y.is_zero() {
        // bottom of the first box: find the box whose overhang covers it
        let right = Scalar::max(&s.x, &t.x);
        let owner = (0..widths.len())
            .rev()
            .find(|&m| right <= &widths[m])
            .expect("bottom segment lies under the first box");
        return Vec2::new(z, tops[owner].clone());
    }
    let overhang_from = widths.get(n + 1).cloned().unwrap_or_else(Scalar::zero);
    if s.y == t.y && s.y == tops[n] && Scalar::min(&s.x, &t.x) >= &overhang_from {
        return Vec2::new(z, -&tops[n]);
    }
    Vec2::zero()
}

/// Convex pieces of the region between a bottom chain and a top chain of
/// points (both left to right, sharing their end abscissae). A plain
/// rectangle stays whole; otherwise the strip is cut into triangles.
fn strip_pieces(bottom: &[Vec2], top: &[Vec2]) -> Vec<Polygon> {
    if bottom.len() == 2 && top.len() == 2 {
        return vec![Polygon::new(vec![bottom[0].clone(), bottom[1].clone(), top[1].clone(), top[0].clone()])];
    }
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i + 1 < bottom.len() || j + 1 < top.len() {
        let advance_bottom = j + 1 == top.len() || (i + 1 < bottom.len() && bottom[i + 1].x <= top[j + 1].x);
        if advance_bottom {
            out.push(Polygon::new(vec![bottom[i].clone(), bottom[i + 1].clone(), top[j].clone()]));
            i += 1;
        } else {
            out.push(Polygon::new(vec![bottom[i].clone(), top[j + 1].clone(), top[j].clone()]));
            j += 1;
        }
    }
    out
}
