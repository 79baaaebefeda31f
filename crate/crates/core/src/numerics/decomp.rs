//! Hermitian eigendecomposition, SVD and unitary completion.
//!
//! The raw factorizations come from `nalgebra`; this module pins the
//! ordering, phase and null-space conventions so that outputs are
//! reproducible.

use nalgebra::linalg::{SymmetricEigen, SVD};
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::tol;
use crate::error::{Error, Result};

/// Eigenpairs of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// True when two eigenvalues lie within `tol` of each other.
    pub fn is_degenerate(&self, tol: f64) -> bool {
        self.values.windows(2).any(|w| (w[0] - w[1]).abs() <= tol)
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// V diag(values) V^dagger.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let diag: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        &(&self.vectors * &ComplexMatrix::from_diagonal(&diag)) * &self.vectors.adjoint()
    }
}

/// Singular value decomposition m = W diag(s) V^dagger of a square matrix.
#[derive(Debug, Clone)]
pub struct Svd {
    pub w: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
    /// Number of singular values treated as nonzero.
    pub rank: usize,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let diag: Vec<Complex64> = self.s.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        &(&self.w * &ComplexMatrix::from_diagonal(&diag)) * &self.v.adjoint()
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending. Eigenvalues closer than
/// `tol::DEGENERACY` form a cluster that keeps the solver's original column
/// order. Each eigenvector is rephased so that its largest-magnitude
/// component (first one on ties) is real and positive.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            h.rows(),
            h.cols()
        )));
    }
    let residual = h.hermitian_residual();
    if residual > tol::HERMITIAN_INPUT {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.rows();
    let eig = SymmetricEigen::new(h.hermitian_part().inner().clone());

    let raw: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let order = descending_with_stable_clusters(&raw);

    let values = order.iter().map(|&k| raw[k]).collect();
    let columns: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&k| {
            let col: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
            fix_phase(col)
        })
        .collect();
    let vectors = if n == 0 {
        ComplexMatrix::zeros(0, 0)
    } else {
        ComplexMatrix::from_columns(&columns)?
    };
    Ok(HermitianEigen { values, vectors })
}

/// SVD of a square matrix with singular values descending.
///
/// Singular vectors belonging to singular values at or below
/// `tol::RANK * max(1, s_max)` are discarded and regenerated by
/// [`complete_to_unitary`] from the retained ones, so the null-space
/// columns of `W` and `V` follow the same deterministic convention.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "svd supports square matrices, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.rows();
    let dec = SVD::new(m.inner().clone(), true, true);
    let u = dec.u.expect("u requested");
    let v_t = dec.v_t.expect("v requested");
    let raw: Vec<f64> = dec.singular_values.iter().copied().collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[b].total_cmp(&raw[a]));
    let s: Vec<f64> = order.iter().map(|&k| raw[k]).collect();

    let threshold = tol::RANK * s.first().copied().unwrap_or(0.0).max(1.0);
    let rank = s.iter().take_while(|&&x| x > threshold).count();

    let w_cols: Vec<Vec<Complex64>> = order[..rank]
        .iter()
        .map(|&k| u.column(k).iter().copied().collect())
        .collect();
    let v_cols: Vec<Vec<Complex64>> = order[..rank]
        .iter()
        .map(|&k| v_t.row(k).iter().map(|z| z.conj()).collect())
        .collect();

    let (w, v) = if rank == 0 {
        (ComplexMatrix::identity(n), ComplexMatrix::identity(n))
    } else {
        (
            complete_to_unitary(&ComplexMatrix::from_columns(&w_cols)?)?,
            complete_to_unitary(&ComplexMatrix::from_columns(&v_cols)?)?,
        )
    };
    let s = s
        .into_iter()
        .enumerate()
        .map(|(i, x)| if i < rank { x } else { x.max(0.0) })
        .collect();
    Ok(Svd { w, s, v, rank })
}

/// Extends a D x d block with orthonormal columns to a D x D unitary.
///
/// The first d columns are copied verbatim. The rest come from modified
/// Gram-Schmidt (with one reorthogonalization pass) over the standard basis
/// vectors e_0, e_1, ..., skipping candidates whose residual norm is below
/// `tol::COMPLETION_SKIP`.
pub fn complete_to_unitary(block: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (dim, d) = (block.rows(), block.cols());
    if d > dim {
        return Err(Error::DimensionMismatch(format!(
            "cannot complete {d} columns in dimension {dim}"
        )));
    }
    let gram = &block.adjoint() * block;
    let mut worst = (0, 0, 0.0_f64);
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { 1.0 } else { 0.0 };
            let dev = (gram.get(i, j) - target).norm();
            if dev > worst.2 {
                worst = (i, j, dev);
            }
        }
    }
    if worst.2 > tol::STRUCTURAL {
        return Err(Error::NotOrthonormal {
            row: worst.0,
            col: worst.1,
            deviation: worst.2,
        });
    }

    let mut basis: Vec<Vec<Complex64>> = (0..d).map(|j| block.column(j)).collect();
    for candidate in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[candidate] = Complex64::new(1.0, 0.0);
        for _pass in 0..2 {
            for q in &basis {
                let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                if overlap != Complex64::new(0.0, 0.0) {
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= qi * overlap;
                    }
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < tol::COMPLETION_SKIP {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        basis.push(v);
    }
    debug_assert_eq!(basis.len(), dim);
    ComplexMatrix::from_columns(&basis)
}

/// exp(-i t h) for Hermitian h, via its eigendecomposition.
pub fn unitary_exp(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let phases: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&lambda| Complex64::from_polar(1.0, -lambda * t))
        .collect();
    Ok(&(&eig.vectors * &ComplexMatrix::from_diagonal(&phases)) * &eig.vectors.adjoint())
}

fn descending_with_stable_clusters(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    // Regroup near-equal values by original index.
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len()
            && (values[order[end - 1]] - values[order[end]]).abs()
                <= tol::DEGENERACY * values[order[start]].abs().max(1.0)
        {
            end += 1;
        }
        order[start..end].sort_unstable();
        start = end;
    }
    order
}

fn fix_phase(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return v;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max - tol::EQUALITY)
        .expect("max is attained");
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in &mut v {
        *z *= phase;
    }
    v[pivot] = Complex64::new(v[pivot].re, 0.0);
    v
}
