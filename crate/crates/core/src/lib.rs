//! Exact-arithmetic translation surfaces.
//!
//! Surfaces are convex polygons glued edge-to-edge by translations, with all
//! geometry done over the rationals. On top of the data model sit builders
//! for the standard examples and the stack-of-boxes family, finiteness
//! verdicts, straight-line flow and saddle connections, cylinder
//! decompositions, and Veech-group membership.

pub mod approx;
pub mod error;
pub mod finiteness;
pub mod flow;
pub mod builders;
pub mod cylinders;
pub mod inequalities;
pub mod scalar;
pub mod surface;
pub mod vector;
pub mod veech;

pub use approx::ApproxScalar;
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use surface::{Backend, EdgeRef, Polygon, TranslationSurface};
pub use vector::{Mat2, Vec2};
