use thiserror::Error;

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;

/// Failures of the geometric operations.
///
/// Most variants mark a point where a hypothesis of the underlying theory is
/// not met (points that are not distinct, spheres that are concentric, a
/// propagation distance past the caustic) rather than a numerical accident.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("length must be a finite positive number, got {0}")]
    NonPositiveLength(f64),
    #[error("difference {minuend} - {subtrahend} is not a positive length")]
    NotGreater { minuend: f64, subtrahend: f64 },
    #[error("points are not distinct (separation {separation:e})")]
    NotDistinct { separation: f64 },
    #[error("point is not on the sphere (off by {offset:e})")]
    NotOnSphere { offset: f64 },
    #[error("tangent constraints have different base points")]
    BaseMismatch,
    #[error("spheres are concentric")]
    Concentric,
    #[error("spheres do not touch")]
    NotTouching,
    #[error("touching point is not unique: intersection solutions are {gap:e} apart")]
    NotUnique { gap: f64 },
    #[error("normal vector must be finite and nonzero")]
    DegenerateNormal,
    #[error("bad primitive: {0}")]
    BadPrimitive(String),
    #[error("too few samples: need at least {min}, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("front is not continuous at sample {index}: {reason}")]
    Discontinuous { index: usize, reason: &'static str },
    #[error("propagation distance {distance} exceeds the caustic limit (bound {bound:?}, clearance {clearance:.3e})")]
    CausticExceeded {
        distance: f64,
        bound: Option<f64>,
        clearance: f64,
    },
    #[error("point is not a sample of the propagated front")]
    NotOnFront,
    #[error("fronts do not match: {0}")]
    FrontMismatch(String),
}
