use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} is too small: at least 2 basis states are required")]
    InvalidDimension(usize),
    #[error("state vector is not normalizable (squared norm {0:e})")]
    NotNormalizable(f64),
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),
    #[error(
        "invalid observable: orthonormality violation {orthonormality:e}, \
         completeness violation {completeness:e}"
    )]
    InvalidObservable {
        orthonormality: f64,
        completeness: f64,
    },
    #[error("post-selection probability {0:e} is at or below the overlap floor")]
    OrthogonalPostselection(f64),
    #[error("distribution over {0} outcomes does not match basis of dimension {1}")]
    BasisMismatch(usize, usize),
    #[error("state of dimension {0} is not a qubit")]
    NotAQubit(usize),
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point {0} (probe width {1}) falls outside the scenario grid")]
    OutOfGrid(f64, f64),
    #[error("coupling too strong for the weak regime: |eps * A_max| = {0:e} > {1:e}")]
    CouplingTooStrong(f64, f64),
    #[error("degenerate design: {0}")]
    DegenerateDesign(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("degenerate probability: {0}")]
    DegenerateProbability(String),
}

pub type Result<T> = std::result::Result<T, Error>;
