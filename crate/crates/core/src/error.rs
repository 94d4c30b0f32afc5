use crate::algebra::Signature;

/// Errors raised by the algebra engine and the geometry built on it.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported signature ({p},{q}): p + q must be between 1 and 8")]
    UnsupportedSignature { p: usize, q: usize },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("grade {grade} out of range for {sig}")]
    GradeOutOfRange { grade: usize, sig: Signature },

    #[error("basis index {index} out of range for {sig}")]
    BasisOutOfRange { index: usize, sig: Signature },

    #[error("expected {expected} coefficients, got {actual}")]
    CoefficientCount { expected: usize, actual: usize },

    #[error("non-finite coefficient")]
    NonFinite,

    #[error("expected a homogeneous grade-{expected} element")]
    WrongGrade { expected: usize },

    #[error("non-simple bivector: square is not a scalar")]
    NonSimpleBivector,

    #[error("conformal model is only defined for Euclidean dimension 2 or 3, got {0}")]
    UnsupportedDimension(usize),

    #[error("signature {0} is not a conformal signature (d+1, 1) with d in {{2, 3}}")]
    NotConformal(Signature),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point at infinity")]
    PointAtInfinity,

    #[error("not a point: vector is not null")]
    NotAPoint,

    #[error("not a Euclidean vector: components outside e1..ed")]
    NotEuclidean,

    #[error("not a unit element (square {square})")]
    NotUnit { square: f64 },

    #[error("not a versor: V·rev(V) = {scalar} with residual {residual:e}")]
    NotVersor { scalar: f64, residual: f64 },

    #[error("degenerate primitive")]
    Degenerate,

    #[error("flat primitive has no finite center or radius")]
    Flat,

    #[error("round primitive where a flat one is required")]
    NotFlat,

    #[error("imaginary primitive: squared radius {0} is negative")]
    Imaginary(f64),

    #[error("null blade where an invertible one is required")]
    NullBlade,

    #[error("point does not lie on the primitive (residual {0:e})")]
    NotIncident(f64),

    #[error("coincident primitives")]
    Coincident,

    #[error("primitive contained in the other")]
    Contained,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
