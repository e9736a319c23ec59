use thiserror::Error;

use crate::lattice::LatticePoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("segment endpoints coincide at {0}")]
    DegenerateSegment(LatticePoint),
    #[error("polygon has zero area")]
    Degenerate,
    #[error("polygon is not strictly convex at {0}")]
    NotConvex(LatticePoint),
    #[error("vertices do not form a parallelogram")]
    NotParallelogram,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("cannot parse surface spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("primary form of a lambda order must be nonzero")]
    ZeroPrimary,
    #[error("order is not injective: {0} and {1} compare equal")]
    NotInjective(LatticePoint, LatticePoint),
    #[error("order extremes are {min}..{max}, expected {p}..{q}")]
    WrongExtremes { min: LatticePoint, max: LatticePoint, p: LatticePoint, q: LatticePoint },
    #[error("cannot parse lambda {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("genus {genus} out of range 0..={max}")]
    GenusOutOfRange { genus: i64, max: u64 },
    #[error("welschinger count at genus {0} is not an invariant (it fails for g >= 1); pass the non-invariance acknowledgement to compute it anyway")]
    WelschingerNonInvariant(u64),
    #[error("exact accumulator overflowed")]
    Overflow,
    #[error("path does not match the polygon: {0}")]
    InvalidPath(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error(transparent)]
    Count(#[from] CountError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("support must contain at least two distinct points")]
    DegenerateSupport,
    #[error("support and lift have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("support point {0} repeated")]
    DuplicatePoint(LatticePoint),
}
