use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index {index} out of range (expected {max_exclusive} components)")]
    IndexOutOfRange { index: usize, max_exclusive: usize },

    #[error("mass must be positive and finite, got {0}")]
    NonPositiveMass(f64),

    #[error("polar angle {0} outside [0, pi]")]
    PolarAngleOutOfRange(f64),

    #[error("momentum magnitude must be non-negative and finite, got {0}")]
    InvalidMomentumMagnitude(f64),

    #[error("matrix is not a proper orthochronous Lorentz transformation (residual {residual:e})")]
    NotLorentz { residual: f64 },

    #[error("spinor normalization {found} differs from expected {expected}")]
    BadNormalization { expected: f64, found: f64 },

    #[error("operation requires the {expected} representation")]
    WrongRepresentation { expected: &'static str },

    #[error("spinor mixes energy signs (projector residual {residual:e}); project it first")]
    MixedEnergySign { residual: f64 },

    #[error("transport matrix violates the Wigner block shape (residual {residual:e})")]
    BlockShapeViolation { residual: f64 },

    #[error("state is not normalized (norm {norm})")]
    UnnormalizedState { norm: f64 },

    #[error("state has two terms with the same momentum")]
    DuplicateMomentum,

    #[error("state has no terms")]
    EmptyState,

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
