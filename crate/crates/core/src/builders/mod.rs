//! Constructors for the surfaces used throughout the crate.

mod rhombus;
mod sequence;
mod stack;

pub use rhombus::{unfold_rhombus, RhombusUnfolding, MAX_RHOMBUS_COPIES};
pub use sequence::SequenceSpec;
pub(crate) use sequence::exact_rational_power as sequence_power;
pub use stack::{stack_of_boxes, StackTruncation};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::surface::{Backend, EdgeRef, Polygon, TranslationSurface};
use crate::vector::Vec2;

/// Names accepted by [`preset`].
pub const PRESETS: &[&str] = &["square-torus", "l-surface"];

/// An `a x b` rectangle with opposite sides glued.
pub fn rect_torus(a: &Scalar, b: &Scalar) -> Result<TranslationSurface> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::NonPositiveDimension);
    }
    let z = Scalar::zero();
    let rect = Polygon::new(vec![
        Vec2::new(z.clone(), z.clone()),
        Vec2::new(a.clone(), z.clone()),
        Vec2::new(a.clone(), b.clone()),
        Vec2::new(z, b.clone()),
    ]);
    TranslationSurface::new_valid(
        vec![rect],
        vec![(EdgeRef::new(0, 0), EdgeRef::new(0, 2)), (EdgeRef::new(0, 1), EdgeRef::new(0, 3))],
        Backend::Exact,
    )
}

pub fn square_torus() -> TranslationSurface {
    rect_torus(&Scalar::one(), &Scalar::one()).expect("unit square torus")
}

fn unit_square(x: i64, y: i64) -> Polygon {
    Polygon::new(vec![Vec2::ints(x, y), Vec2::ints(x + 1, y), Vec2::ints(x + 1, y + 1), Vec2::ints(x, y + 1)])
}

/// Three unit squares forming an L: `[0,2]x[0,1]` plus `[0,1]x[1,2]`, with
/// opposite sides of the L glued. Genus 2, one cone point of angle `6 pi`.
pub fn l_surface() -> TranslationSurface {
    let e = EdgeRef::new;
    // 0: [0,1]x[0,1], 1: [1,2]x[0,1], 2: [0,1]x[1,2]
    let polygons = vec![unit_square(0, 0), unit_square(1, 0), unit_square(0, 1)];
    let pairs = vec![
        (e(0, 1), e(1, 3)),
        (e(1, 1), e(0, 3)),
        (e(2, 1), e(2, 3)),
        (e(0, 2), e(2, 0)),
        (e(2, 2), e(0, 0)),
        (e(1, 2), e(1, 0)),
    ];
    TranslationSurface::new_valid(polygons, pairs, Backend::Exact).expect("L-surface is valid")
}

pub fn preset(name: &str) -> Option<TranslationSurface> {
    match name {
        "square-torus" => Some(square_torus()),
        "l-surface" => Some(l_surface()),
        _ => None,
    }
}
