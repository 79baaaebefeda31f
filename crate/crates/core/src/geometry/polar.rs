use crate::error::{Error, Result};
use crate::numerics::{svd, ComplexMatrix};

/// m = h u with h Hermitian positive semidefinite and u unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarFactors {
    pub h: ComplexMatrix,
    pub u: ComplexMatrix,
}

impl PolarFactors {
    pub fn product(&self) -> ComplexMatrix {
        &self.h * &self.u
    }
}

/// Left polar decomposition through the SVD m = W Σ V^†: h = W Σ W^†, u = W V^†.
///
/// h is unique. For rank-deficient m the unitary factor is fixed by the
/// null-space completion used in [`svd`], e.g. √p |0><1| gives u = σ_x.
pub fn polar_decompose(m: &ComplexMatrix) -> Result<PolarFactors> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "polar decomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let dec = svd(m)?;
    let sigma: Vec<_> = dec.s.iter().map(|&x| num_complex::Complex64::new(x, 0.0)).collect();
    let h = (&(&dec.w * &ComplexMatrix::from_diagonal(&sigma)) * &dec.w.adjoint()).hermitian_part();
    let u = &dec.w * &dec.v.adjoint();
    Ok(PolarFactors { h, u })
}
