use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector where a nonzero one is required")]
    ZeroVector,
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("matrix determinant must be positive, got {0}")]
    NonPositiveDeterminant(Scalar),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("surfaces use different arithmetic backends")]
    BackendMismatch,
    #[error("operation requires the exact backend")]
    ApproximateBackend,
    #[error("edge flipping did not settle after {flips} flips")]
    NonTermination { flips: usize },
    #[error("rectangle dimensions must be positive")]
    NonPositiveDimension,
    #[error("box widths must be strictly decreasing")]
    WidthNotDecreasing,
    #[error("angle outside the admissible range (0, pi/2)")]
    AngleOutOfRange,
    #[error("sequence spec outside the supported family: {0}")]
    SpecOutOfScope(String),
    #[error("start point is not in the given polygon or corner")]
    StartOutsidePolygon,
    #[error("direction is not periodic within the development bound")]
    NotPeriodic,
    #[error("cylinders belong to different surfaces")]
    DifferentSurfaces,
    #[error("vector is not an element of the set")]
    VectorNotInSet,
    #[error("cylinder moduli have no common multiple")]
    NotCommensurable,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
