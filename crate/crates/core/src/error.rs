use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("matrix is not normal: ||[m, m^dag]|| = {residual:e}")]
    NotNormal { residual: f64 },

    #[error("Hilbert space dimension {dim} exceeds the configured cap {cap}")]
    DimOverflow { dim: usize, cap: usize },

    #[error("charge projectors do not resolve the identity (residual {residual:e})")]
    IncompleteDecomposition { residual: f64 },

    #[error("{what} index {index} out of range 0..{bound}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("central element failed to separate blocks after {attempts} draws")]
    DegenerateDraw { attempts: usize },

    #[error("shift element is not central: commutator residual {residual:e}")]
    NotCentral { residual: f64 },

    #[error("circuit equality violated: max entrywise deviation {deviation:e}")]
    TheoremViolation { deviation: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unavailable: {0}")]
    Unavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
