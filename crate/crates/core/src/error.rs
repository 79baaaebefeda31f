use thiserror::Error;

/// Errors raised by validation and computation throughout the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (max |h - h^dagger| = {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (max |u^dagger u - I| = {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("columns are not orthonormal: Gram entry ({row}, {col}) deviates from identity by {deviation:.3e}")]
    NotOrthonormal {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("Kraus completeness violated: completeness residual max |sum m^dagger m - I| = {residual:.3e}")]
    Completeness { residual: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("density matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("Bloch vector length {length} exceeds 1")]
    BlochTooLong { length: f64 },

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("Hermitian factor a + b.sigma is not positive (a = {a}, |b| = {b_norm})")]
    NotPositiveFactor { a: f64, b_norm: f64 },

    #[error("path needs at least {required} samples, got {got}")]
    TooFewSamples { required: usize, got: usize },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("operator and state are not diagonal in a common basis (off-diagonal magnitude {offdiag:.3e})")]
    NotCoDiagonal { offdiag: f64 },

    #[error("final transporter is not cyclic in the state basis (off-diagonal magnitude {offdiag:.3e})")]
    NotCyclic { offdiag: f64 },

    #[error("state has a degenerate spectrum; its eigenbasis is not unique")]
    DegenerateState,

    #[error("consecutive vertices {0} and {1} are antipodal; geodesic is undefined")]
    AntipodalVertices(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
