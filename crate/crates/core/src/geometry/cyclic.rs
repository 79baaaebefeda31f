use num_complex::Complex64;

use super::transport::{pt_correct, pt_residual, UnitaryPath};
use crate::channels::{compose_unitary, KrausChannel};
use crate::error::{Error, Result};
use crate::interferometry::{pattern_set, InterferencePattern};
use crate::numerics::{tol, ComplexMatrix};
use crate::states::DensityMatrix;

/// Off-diagonal tolerance for the cyclicity of the final transporter.
pub const CYCLIC_TOL: f64 = 1e-8;

fn max_offdiag(m: &ComplexMatrix) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                worst = worst.max(m.get(i, j).norm());
            }
        }
    }
    worst
}

/// Cyclic geometric-phase patterns Σ_k w_k <k|h_mu|k> <k|v_mu|k> e^{iβ_k},
/// β_k = arg <k|ũ(T)|k>, in the eigenbasis of ρ.
///
/// Requires every h_mu to be diagonal in that basis and ũ(T) to map each
/// |k> to a phase multiple of itself. Degenerate ρ leaves the basis a
/// convention; use [`geometric_phase_cyclic_in_basis`] to supply one.
pub fn geometric_phase_cyclic(
    hs: &[ComplexMatrix],
    vs: &[ComplexMatrix],
    transporter_end: &ComplexMatrix,
    rho: &DensityMatrix,
) -> Result<Vec<InterferencePattern>> {
    let basis = rho.eigen().vectors;
    geometric_phase_cyclic_in_basis(hs, vs, transporter_end, rho, &basis)
}

/// [`geometric_phase_cyclic`] with an explicit orthonormal basis, which must
/// diagonalize ρ as well.
pub fn geometric_phase_cyclic_in_basis(
    hs: &[ComplexMatrix],
    vs: &[ComplexMatrix],
    transporter_end: &ComplexMatrix,
    rho: &DensityMatrix,
    basis: &ComplexMatrix,
) -> Result<Vec<InterferencePattern>> {
    let n = rho.dim();
    if hs.len() != vs.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} Hermitian factors for {} unitary factors",
            hs.len(),
            vs.len()
        )));
    }
    let all = hs.iter().chain(vs).chain(std::iter::once(transporter_end)).chain(std::iter::once(basis));
    for m in all {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, state dimension is {n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    let in_basis = |m: &ComplexMatrix| &(&basis.adjoint() * m) * basis;

    let rho_k = in_basis(rho.matrix());
    let offdiag = max_offdiag(&rho_k);
    if offdiag > tol::STRUCTURAL {
        return Err(Error::NotCoDiagonal { offdiag });
    }
    let weights: Vec<f64> = rho_k.diagonal().iter().map(|z| z.re).collect();

    let u_k = in_basis(transporter_end);
    let offdiag = max_offdiag(&u_k);
    if offdiag > CYCLIC_TOL {
        return Err(Error::NotCyclic { offdiag });
    }
    let betas: Vec<Complex64> = u_k
        .diagonal()
        .iter()
        .map(|z| Complex64::from_polar(1.0, z.arg()))
        .collect();

    hs.iter()
        .zip(vs)
        .enumerate()
        .map(|(mu, (h, v))| {
            let h_k = in_basis(h);
            let offdiag = max_offdiag(&h_k);
            if offdiag > tol::STRUCTURAL {
                return Err(Error::NotCoDiagonal { offdiag });
            }
            let v_k = in_basis(v).diagonal();
            let value: Complex64 = (0..n)
                .map(|k| h_k.get(k, k).re * v_k[k] * betas[k] * weights[k])
                .sum();
            Ok(InterferencePattern::new(mu, value))
        })
        .collect()
}

/// Outcome of sending a state around a unitary loop followed by a channel.
#[derive(Debug, Clone)]
pub struct TransportedPatterns {
    /// Pattern set of the channel with Kraus operators m_mu ũ(T).
    pub patterns: Vec<InterferencePattern>,
    pub residual_before: f64,
    pub residual_after: f64,
    /// ũ(T) after parallel-transport correction.
    pub transporter_end: ComplexMatrix,
    /// True when ũ(T) is diagonal in the eigenbasis of ρ.
    pub cyclic: bool,
}

/// Parallel-transports `path` in the eigenbasis of ρ, composes the channel
/// with the final transporter and evaluates every pattern.
///
/// Fails with [`Error::DegenerateState`] when ρ has a repeated eigenvalue,
/// since the transport basis is then not fixed by the state.
pub fn transported_patterns(
    channel: &KrausChannel,
    rho: &DensityMatrix,
    path: &UnitaryPath,
) -> Result<TransportedPatterns> {
    let eig = rho.eigen();
    if eig.is_degenerate(tol::STRUCTURAL) {
        return Err(Error::DegenerateState);
    }
    let basis = eig.vectors;
    let residual_before = pt_residual(path, &basis)?;
    let corrected = pt_correct(path, &basis)?;
    let residual_after = pt_residual(&corrected, &basis)?;
    let end = corrected.last().clone();
    let composed = compose_unitary(channel, &end)?;
    let patterns = pattern_set(&composed, rho)?;
    let cyclic = max_offdiag(&(&(&basis.adjoint() * &end) * &basis)) <= CYCLIC_TOL;
    Ok(TransportedPatterns {
        patterns,
        residual_before,
        residual_after,
        transporter_end: end,
        cyclic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::depolarizing;
    use crate::geometry::polar::polar_decompose;
    use crate::interferometry::pattern;
    use crate::numerics::pauli;
    use crate::states::{density_from_bloch, BlochVector};
    use std::f64::consts::PI;

    fn rho_z(r: f64) -> DensityMatrix {
        density_from_bloch(&BlochVector::new([0.0, 0.0, r]).unwrap())
    }

    fn cyclic_z(beta0: f64) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&[Complex64::from_polar(1.0, beta0), Complex64::from_polar(1.0, -beta0)])
    }

    fn polar_lists(c: &KrausChannel) -> (Vec<ComplexMatrix>, Vec<ComplexMatrix>) {
        c.kraus()
            .iter()
            .map(|m| {
                let f = polar_decompose(m).unwrap();
                (f.h, f.u)
            })
            .unzip()
    }

    #[test]
    fn identity_transporter_reduces_to_trace() {
        let c = depolarizing(0.3).unwrap();
        let (hs, vs) = polar_lists(&c);
        let rho = rho_z(0.4);
        let pats = geometric_phase_cyclic(&hs, &vs, &ComplexMatrix::identity(2), &rho).unwrap();
        for (mu, p) in pats.iter().enumerate() {
            let direct = pattern(&c, &rho, mu).unwrap();
            assert!((p.value - direct.value).norm() < 1e-12);
        }
    }

    #[test]
    fn depolarizing_loop_with_half_sphere() {
        // Ω = π: β_0 = Ω/2 for the +z eigenvector.
        let c = depolarizing(0.3).unwrap();
        let (hs, vs) = polar_lists(&c);
        let pats = geometric_phase_cyclic(&hs, &vs, &cyclic_z(PI / 2.0), &rho_z(0.5)).unwrap();
        assert!((pats[0].value - Complex64::new(0.0, 0.418330013267038)).norm() < 1e-12);
        assert!(pats[1].visibility < 1e-15 && pats[2].visibility < 1e-15);
        assert!((pats[3].value - Complex64::new(0.0, 0.316227766016838)).norm() < 1e-12);
    }

    #[test]
    fn matches_direct_pattern_route() {
        let c = depolarizing(0.2).unwrap();
        let (hs, vs) = polar_lists(&c);
        let ut = cyclic_z(0.77);
        let rho = rho_z(-0.35);
        let pats = geometric_phase_cyclic(&hs, &vs, &ut, &rho).unwrap();
        let composed = compose_unitary(&c, &ut).unwrap();
        for (mu, p) in pats.iter().enumerate() {
            let direct = pattern(&composed, &rho, mu).unwrap();
            assert!((p.value - direct.value).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_cyclic_transporter() {
        let c = depolarizing(0.2).unwrap();
        let (hs, vs) = polar_lists(&c);
        let ut = crate::geometry::su2::su2_exp(&crate::geometry::su2::Su2Params::new(0.3, [1.0, 0.0, 0.0]).unwrap());
        match geometric_phase_cyclic(&hs, &vs, &ut, &rho_z(0.5)) {
            Err(Error::NotCyclic { offdiag }) => assert!((offdiag - 0.3f64.sin()).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_codiagonal_h() {
        let hs = vec![pauli::identity() + pauli::x().scale_real(0.5)];
        let vs = vec![ComplexMatrix::identity(2)];
        assert!(matches!(
            geometric_phase_cyclic(&hs, &vs, &ComplexMatrix::identity(2), &rho_z(0.5)),
            Err(Error::NotCoDiagonal { .. })
        ));
    }

    #[test]
    fn transported_patterns_rejects_degenerate_state() {
        let path = crate::geometry::transport::axis_rotation_path([1.0, 0.0, 0.0], 1.0, 10).unwrap();
        assert_eq!(
            transported_patterns(&depolarizing(0.1).unwrap(), &rho_z(0.0), &path).unwrap_err(),
            Error::DegenerateState
        );
    }
}
