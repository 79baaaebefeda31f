//! Density matrices, qubit Bloch vectors and purifications.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, pauli, tol, ComplexMatrix, HermitianEigen};

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `m` with the default tolerance.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, tol::EQUALITY)
    }

    /// Validates Hermiticity, trace and positivity to within `tol`. The stored
    /// matrix is the Hermitian part of `m`.
    pub fn with_tolerance(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = m.hermitian_residual();
        if residual > tol {
            return Err(Error::NotHermitian { residual });
        }
        let matrix = m.hermitian_part();
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::TraceNotOne { trace });
        }
        let eig = hermitian_eig(&matrix)?;
        let min_eigenvalue = eig.values.last().copied().unwrap_or(0.0);
        if min_eigenvalue < -tol {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// |psi><psi| for a normalized state vector.
    pub fn from_pure(state: &PureState) -> Self {
        let amps = state.amplitudes();
        Self {
            matrix: ComplexMatrix::outer(amps, amps).hermitian_part(),
        }
    }

    /// I / n.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigendecomposition with weights clamped to be nonnegative.
    pub fn eigen(&self) -> HermitianEigen {
        let mut eig = hermitian_eig(&self.matrix).expect("validated Hermitian");
        eig.values.iter_mut().for_each(|w| *w = w.max(0.0));
        eig
    }

    /// True when the spectrum has a repeated eigenvalue, i.e. the eigenbasis
    /// is not unique.
    pub fn is_degenerate(&self) -> bool {
        self.eigen().is_degenerate(tol::STRUCTURAL)
    }
}

/// Real 3-vector with length at most one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    r: [f64; 3],
}

impl BlochVector {
    pub fn new(r: [f64; 3]) -> Result<Self> {
        if r.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("Bloch vector must be finite".into()));
        }
        let length = norm3(r);
        if length > 1.0 + tol::EQUALITY {
            return Err(Error::BlochTooLong { length });
        }
        Ok(Self { r })
    }

    pub fn components(&self) -> [f64; 3] {
        self.r
    }

    pub fn x(&self) -> f64 {
        self.r[0]
    }

    pub fn y(&self) -> f64 {
        self.r[1]
    }

    pub fn z(&self) -> f64 {
        self.r[2]
    }

    pub fn length(&self) -> f64 {
        norm3(self.r)
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch("empty state vector".into()));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::EQUALITY {
            return Err(Error::InvalidParameter(format!(
                "state vector norm is {norm}, expected 1"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Basis ket |index> in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, len: dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// <self|other>
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// ½(I + x σ_x + y σ_y + z σ_z).
pub fn density_from_bloch(r: &BlochVector) -> DensityMatrix {
    let m = (pauli::identity() + pauli::dot(r.components())).scale_real(0.5);
    DensityMatrix { matrix: m }
}

/// r_a = Tr(ρ σ_a) for a qubit state.
pub fn bloch_from_density(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "Bloch vectors exist for qubits only, got dimension {}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let comp = |s: ComplexMatrix| (m * &s).trace().re;
    let r = [comp(pauli::x()), comp(pauli::y()), comp(pauli::z())];
    // Rounding can push a pure state a hair outside the ball.
    let length = norm3(r);
    let r = if length > 1.0 { r.map(|c| c / length) } else { r };
    BlochVector::new(r)
}

/// Purification of a state with the environment attached in |0_e>.
#[derive(Debug, Clone)]
pub struct Purification {
    /// Σ_k √w_k |k_i>|0_e>|k_a> in system ⊗ environment ⊗ ancilla order.
    pub state: PureState,
    pub sys_dim: usize,
    pub env_dim: usize,
    pub anc_dim: usize,
    /// Weights w_k, descending, matching the eigenbasis used.
    pub weights: Vec<f64>,
    /// Set when ρ has a repeated eigenvalue and the eigenbasis is a convention.
    pub degenerate: bool,
}

/// Builds Σ_k √w_k |k_i>|0_e>|k_a> from the eigendecomposition of ρ.
///
/// The ancilla has the system dimension and uses its standard basis for
/// |k_a>. Zero-weight eigenvectors stay in with zero amplitude.
pub fn purify(rho: &DensityMatrix, env_dim: usize) -> Result<Purification> {
    if env_dim == 0 {
        return Err(Error::InvalidParameter("environment dimension must be at least 1".into()));
    }
    let n = rho.dim();
    let eig = rho.eigen();
    let total = n * env_dim * n;
    let mut amps = vec![Complex64::new(0.0, 0.0); total];
    for (k, &w) in eig.values.iter().enumerate() {
        let weight = w.sqrt();
        let ket = eig.vector(k);
        for (i, a) in ket.iter().enumerate() {
            // |i>|0_e>|k_a>
            let idx = (i * env_dim) * n + k;
            amps[idx] += a * weight;
        }
    }
    // Weights are clamped at zero, so renormalize away the rounding.
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|z| *z /= norm);
    Ok(Purification {
        state: PureState::new(amps)?,
        sys_dim: n,
        env_dim,
        anc_dim: n,
        degenerate: eig.is_degenerate(tol::STRUCTURAL),
        weights: eig.values,
    })
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::partial_trace_env;
    use crate::random;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn bloch(r: [f64; 3]) -> BlochVector {
        BlochVector::new(r).unwrap()
    }

    #[test]
    fn bloch_poles_and_center() {
        let north = density_from_bloch(&bloch([0., 0., 1.]));
        assert_eq!(north.matrix(), &ComplexMatrix::from_real(&[&[1., 0.], &[0., 0.]]).unwrap());
        let center = density_from_bloch(&bloch([0., 0., 0.]));
        assert_eq!(center, DensityMatrix::maximally_mixed(2));
        let plus = density_from_bloch(&bloch([1., 0., 0.]));
        assert_eq!(plus.matrix(), &ComplexMatrix::from_real(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap());
    }

    #[test]
    fn bloch_vector_too_long() {
        assert!(matches!(
            BlochVector::new([0.8, 0.8, 0.0]),
            Err(Error::BlochTooLong { .. })
        ));
    }

    #[test]
    fn bloch_from_known_states() {
        assert_eq!(
            bloch_from_density(&DensityMatrix::maximally_mixed(2)).unwrap().components(),
            [0.0, 0.0, 0.0]
        );
        let north = DensityMatrix::new(ComplexMatrix::from_real(&[&[1., 0.], &[0., 0.]]).unwrap()).unwrap();
        assert_eq!(bloch_from_density(&north).unwrap().components(), [0.0, 0.0, 1.0]);
        assert!(bloch_from_density(&DensityMatrix::maximally_mixed(3)).is_err());
    }

    #[test]
    fn bloch_roundtrip_random() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let r = random::bloch_vector(&mut rng);
            let back = bloch_from_density(&density_from_bloch(&r)).unwrap();
            for (a, b) in r.components().iter().zip(back.components()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn density_validation_errors() {
        let not_herm = ComplexMatrix::from_real(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(DensityMatrix::new(not_herm), Err(Error::NotHermitian { .. })));
        let bad_trace = ComplexMatrix::from_real(&[&[0.5, 0.0], &[0.0, 0.6]]).unwrap();
        assert!(matches!(DensityMatrix::new(bad_trace), Err(Error::TraceNotOne { .. })));
        let negative = ComplexMatrix::from_real(&[&[1.2, 0.0], &[0.0, -0.2]]).unwrap();
        assert!(matches!(DensityMatrix::new(negative), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn purify_pure_input() {
        let rho = density_from_bloch(&bloch([0., 0., 1.]));
        let p = purify(&rho, 2).unwrap();
        assert_eq!(p.state, PureState::basis(8, 0).unwrap());
        assert!(!p.degenerate);
    }

    #[test]
    fn purify_maximally_mixed_qubit() {
        let p = purify(&DensityMatrix::maximally_mixed(2), 2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // |0 0_e 0_a> is index 0; |1 0_e 1_a> is (1*2 + 0)*2 + 1 = 5
        let mut expected = vec![Complex64::new(0.0, 0.0); 8];
        expected[0] = Complex64::new(s, 0.0);
        expected[5] = Complex64::new(s, 0.0);
        for (a, b) in p.state.amplitudes().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(p.degenerate);
    }

    #[test]
    fn purify_reduces_to_input() {
        let mut rng = StdRng::seed_from_u64(5);
        for n in 1..=4 {
            for env in 1..=3 {
                let rho = random::density_matrix(&mut rng, n);
                let p = purify(&rho, env).unwrap();
                let amps = p.state.amplitudes();
                let full = ComplexMatrix::outer(amps, amps);
                let reduced = partial_trace_env(&full, n, env * n).unwrap();
                assert!(reduced.max_abs_diff(rho.matrix()) < 1e-12);
            }
        }
    }

    #[test]
    fn purify_rejects_zero_env() {
        assert!(purify(&DensityMatrix::maximally_mixed(2), 0).is_err());
    }
}
