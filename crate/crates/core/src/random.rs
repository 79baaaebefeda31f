//! Random matrices, states and channels for property checks and demos.

use nalgebra::linalg::QR;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channels::{kraus_from_dilation, Dilation, KrausChannel};
use crate::numerics::ComplexMatrix;
use crate::states::{BlochVector, DensityMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let entries = (0..n * n).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_row_major(n, n, entries).expect("shape is consistent")
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ginibre(rng, n).hermitian_part()
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the R-diagonal phases removed).
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let qr = QR::new(g.inner().clone());
    let q = qr.q();
    let r = qr.r();
    let mut out = ComplexMatrix::from_inner(q);
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        let col: Vec<Complex64> = out.column(j).into_iter().map(|z| z * phase).collect();
        out.set_column(j, &col);
    }
    out
}

/// Full-rank random density matrix G G^dagger / Tr(G G^dagger).
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityMatrix {
    let g = ginibre(rng, n);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).expect("G G^dagger is a valid state")
}

/// Uniform point in the closed unit ball.
pub fn bloch_vector<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let dir = unit_vector(rng);
    let radius = rng.random::<f64>().cbrt();
    BlochVector::new(dir.map(|c| c * radius)).expect("inside the unit ball")
}

/// Uniform point on the unit sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return v.map(|c| c / n);
        }
    }
}

/// Channel read off a Haar-random system-environment unitary.
pub fn channel<R: Rng + ?Sized>(rng: &mut R, sys_dim: usize, env_dim: usize) -> KrausChannel {
    let u = unitary(rng, sys_dim * env_dim);
    let dilation = Dilation::new(sys_dim, env_dim, u).expect("Haar unitary is unitary");
    kraus_from_dilation(&dilation).expect("extraction from a valid dilation")
}
