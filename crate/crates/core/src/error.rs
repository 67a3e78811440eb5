use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },

    #[error("coefficient {index} is not finite ({value})")]
    NonFiniteCoefficient { index: usize, value: f64 },

    #[error("degree mismatch: central polynomial has degree {central}, design polynomial has degree {design}")]
    DegreeMismatch { central: usize, design: usize },

    #[error("matrix order {order} must exceed polynomial degree {degree}")]
    OrderTooSmall { order: usize, degree: usize },

    #[error("matrix order must be at least 1")]
    EmptyMatrix,

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("central polynomial is not Schur stable")]
    UnstableCentral,

    #[error("design polynomial is outside the SPR set (certified trigonometric minimum {minimum}); no finite m0 exists")]
    NotStrictlyPositive { minimum: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("cell ({x}, {y}) is LMI-feasible but not Schur stable")]
    ContainmentViolation { x: f64, y: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
