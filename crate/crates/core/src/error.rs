use crate::chart::Point;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("point {point:?} is within {reach} of a chart boundary or singular locus")]
    PointTooClose { point: Point, reach: f64 },

    #[error("metric is not positive definite at stencil node {point:?} (det = {det:e})")]
    NonPositiveDefinite { point: Point, det: f64 },

    #[error("two-form basis is not orthonormal (Gram deviation {deviation:e})")]
    NonOrthonormalBasis { deviation: f64 },

    #[error("conformal factor is not positive at {point:?} (u = {value})")]
    NonPositiveConformalFactor { point: Point, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("entry `{0}` is noncompact; only annulus-restricted budgets are available")]
    Noncompact(String),

    #[error("evaluation failed at node {point:?}: {source}")]
    AtNode { point: Point, source: Box<Error> },

    #[error("pole of the Moebius map lies inside or on the disk (delta = {delta:e})")]
    PoleInsideDisk { delta: f64 },

    #[error("Schottky nesting violated: child {word} escapes its target disk by {excess:e}")]
    SchottkyViolation { word: String, excess: f64 },

    #[error("refinement depth {depth} exceeds the cap of {cap}")]
    DepthCapExceeded { depth: usize, cap: usize },

    #[error("disk level is empty")]
    EmptyLevel,

    #[error("covering sum has no root: {0}")]
    NoCoveringRoot(String),

    #[error("invalid crossing bracket: {0}")]
    InvalidBracket(String),

    #[error("unknown primitive manifold `{0}`")]
    UnknownPrimitive(String),

    #[error("cannot parse manifold expression: {0}")]
    Parse(String),
}

impl Error {
    /// Precondition violations are the caller's fault; everything else is a
    /// numerical failure inside an engine.
    pub fn is_precondition(&self) -> bool {
        match self {
            Error::PointTooClose { .. }
            | Error::InvalidParameter(_)
            | Error::Noncompact(_)
            | Error::DepthCapExceeded { .. }
            | Error::EmptyLevel
            | Error::InvalidBracket(_)
            | Error::UnknownPrimitive(_)
            | Error::Parse(_) => true,
            Error::AtNode { source, .. } => source.is_precondition(),
            _ => false,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::PointTooClose { .. } => "point-too-close-to-boundary",
            Error::NonPositiveDefinite { .. } => "non-positive-definite-metric",
            Error::NonOrthonormalBasis { .. } => "non-orthonormal-basis",
            Error::NonPositiveConformalFactor { .. } => "non-positive-conformal-factor",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::Noncompact(_) => "noncompact-entry",
            Error::AtNode { .. } => "node-evaluation",
            Error::PoleInsideDisk { .. } => "pole-inside-disk",
            Error::SchottkyViolation { .. } => "schottky-violation",
            Error::DepthCapExceeded { .. } => "depth-cap-exceeded",
            Error::EmptyLevel => "empty-level",
            Error::NoCoveringRoot(_) => "no-covering-root",
            Error::InvalidBracket(_) => "invalid-bracket",
            Error::UnknownPrimitive(_) => "unknown-primitive",
            Error::Parse(_) => "parse",
        }
    }
}
