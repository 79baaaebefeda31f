//! Dense complex linear algebra for small systems.

mod decomp;
mod matrix;

pub use decomp::{complete_to_unitary, hermitian_eig, svd, unitary_exp, HermitianEigen, Svd};
pub use matrix::{partial_trace_env, pauli, tensor, ComplexMatrix};

/// Default numerical tolerances.
pub mod tol {
    /// Structural checks: completeness, unitarity, orthonormality.
    pub const STRUCTURAL: f64 = 1e-10;
    /// Equality assertions and validation of user-facing invariants.
    pub const EQUALITY: f64 = 1e-12;
    /// Hermiticity required of eigendecomposition inputs.
    pub const HERMITIAN_INPUT: f64 = 1e-12;
    /// Minimum residual norm for a Gram-Schmidt completion candidate.
    pub const COMPLETION_SKIP: f64 = 1e-8;
    /// Relative threshold below which a singular value counts as zero.
    pub const RANK: f64 = 1e-12;
    /// Eigenvalues closer than this are one degenerate cluster.
    pub const DEGENERACY: f64 = 1e-12;
    /// Visibility below which a pattern phase is reported as undefined.
    pub const PHASE: f64 = 1e-9;
    /// Acceptable parallel-transport residual.
    pub const PT_RESIDUAL: f64 = 1e-6;
}
