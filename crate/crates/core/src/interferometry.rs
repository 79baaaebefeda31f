//! Interference patterns of a state sent through a CP map in one arm of a
//! Mach-Zehnder interferometer.
//!
//! The mu-th pattern is obtained by flipping the reference-arm environment
//! from |0_e> to |mu_e>; its complex amplitude is Tr(m_mu ρ). Three routes
//! compute it independently: the Kraus trace, the full trace over
//! system ⊗ environment with the dilation unitary, and the inner product of
//! the purified target and reference states.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channels::{dilate, Dilation, KrausChannel};
use crate::error::{Error, Result};
use crate::numerics::{tensor, tol, ComplexMatrix};
use crate::states::{purify, DensityMatrix, PureState};

/// ν e^{iα} for one environment flip index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferencePattern {
    pub mu: usize,
    pub value: Complex64,
    pub visibility: f64,
    /// arg(value) in (-π, π]; zero when `phase_defined` is false.
    pub phase: f64,
    pub phase_defined: bool,
}

impl InterferencePattern {
    pub fn new(mu: usize, value: Complex64) -> Self {
        Self::with_phase_tolerance(mu, value, tol::PHASE)
    }

    /// Phases of patterns with visibility below `phase_tol` are undefined.
    pub fn with_phase_tolerance(mu: usize, value: Complex64, phase_tol: f64) -> Self {
        let visibility = value.norm();
        let phase_defined = visibility >= phase_tol;
        let phase = if phase_defined {
            let a = value.arg();
            if a <= -PI {
                PI
            } else {
                a
            }
        } else {
            0.0
        };
        Self {
            mu,
            value,
            visibility,
            phase,
            phase_defined,
        }
    }
}

fn check_dims(c_dim: usize, rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != c_dim {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on dimension {c_dim}, state has dimension {}",
            rho.dim()
        )));
    }
    Ok(())
}

/// Tr(m_mu ρ).
pub fn pattern(c: &KrausChannel, rho: &DensityMatrix, mu: usize) -> Result<InterferencePattern> {
    check_dims(c.sys_dim(), rho)?;
    let m = c.operator(mu)?;
    Ok(InterferencePattern::new(mu, (m * rho.matrix()).trace()))
}

/// All K patterns, in Kraus order.
pub fn pattern_set(c: &KrausChannel, rho: &DensityMatrix) -> Result<Vec<InterferencePattern>> {
    (0..c.env_dim()).map(|mu| pattern(c, rho, mu)).collect()
}

/// Transposition of environment states 0 and mu (identity for mu = 0), so
/// that F|0_e> = +|mu_e>.
pub fn flip_operator(env_dim: usize, mu: usize) -> Result<ComplexMatrix> {
    if mu >= env_dim {
        return Err(Error::IndexOutOfRange {
            index: mu,
            len: env_dim,
        });
    }
    let mut f = ComplexMatrix::identity(env_dim);
    if mu != 0 {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        f.set(0, 0, zero);
        f.set(mu, mu, zero);
        f.set(mu, 0, one);
        f.set(0, mu, one);
    }
    Ok(f)
}

/// Tr_ie[U_ie (ρ ⊗ |0_e><0_e|) (I ⊗ F)^†] with the dilation unitary.
pub fn pattern_via_dilation(
    d: &Dilation,
    rho: &DensityMatrix,
    mu: usize,
) -> Result<InterferencePattern> {
    let value = dilation_trace(d.unitary(), d.sys_dim(), d.env_dim(), rho, mu)?;
    Ok(InterferencePattern::new(mu, value))
}

/// The dilation-route trace for an arbitrary (not necessarily unitary)
/// system-environment operator. Used directly for negative controls.
pub fn dilation_trace(
    u: &ComplexMatrix,
    sys_dim: usize,
    env_dim: usize,
    rho: &DensityMatrix,
    mu: usize,
) -> Result<Complex64> {
    check_dims(sys_dim, rho)?;
    let side = sys_dim * env_dim;
    if u.rows() != side || u.cols() != side {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, expected {side}x{side}",
            u.rows(),
            u.cols()
        )));
    }
    let f = flip_operator(env_dim, mu)?;
    let mut env0 = ComplexMatrix::zeros(env_dim, env_dim);
    env0.set(0, 0, Complex64::new(1.0, 0.0));
    let joint = tensor(rho.matrix(), &env0);
    let flip = tensor(&ComplexMatrix::identity(sys_dim), &f);
    Ok((&(u * &joint) * &flip.adjoint()).trace())
}

/// <Ψ_ref|Ψ_tar> with |Ψ_tar> = (U_ie ⊗ I_a)|Ψ> and
/// |Ψ_ref> = (I_i ⊗ F ⊗ I_a)|Ψ>, |Ψ> the purification of ρ.
pub fn pattern_via_purification(
    c: &KrausChannel,
    rho: &DensityMatrix,
    mu: usize,
) -> Result<InterferencePattern> {
    check_dims(c.sys_dim(), rho)?;
    let d = dilate(c)?;
    purification_overlap(&d, rho, mu)
}

/// Purification route for an already-built dilation.
pub fn purification_overlap(
    d: &Dilation,
    rho: &DensityMatrix,
    mu: usize,
) -> Result<InterferencePattern> {
    check_dims(d.sys_dim(), rho)?;
    let (n, k) = (d.sys_dim(), d.env_dim());
    let f = flip_operator(k, mu)?;
    let psi = purify(rho, k)?.state;
    let ancilla = ComplexMatrix::identity(n);

    let target = tensor(d.unitary(), &ancilla).apply_to(psi.amplitudes());
    let reference = tensor(&tensor(&ComplexMatrix::identity(n), &f), &ancilla)
        .apply_to(psi.amplitudes());
    let target = PureState::new(target)?;
    let reference = PureState::new(reference)?;
    Ok(InterferencePattern::new(mu, reference.inner(&target)))
}

/// Output intensity ½(1 + ν cos(χ - α)) on a grid of reference phases χ.
/// Patterns with undefined phase give a flat ½.
pub fn fringe(pat: &InterferencePattern, chi_grid: &[f64]) -> Vec<f64> {
    chi_grid
        .iter()
        .map(|&chi| {
            if pat.phase_defined {
                0.5 * (1.0 + pat.visibility * (chi - pat.phase).cos())
            } else {
                0.5
            }
        })
        .collect()
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (points - 1) as f64;
            (0..points)
                .map(|i| if i == points - 1 { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{amplitude_damping, depolarizing};
    use crate::random;
    use crate::states::{density_from_bloch, BlochVector};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn rho_from(r: [f64; 3]) -> DensityMatrix {
        density_from_bloch(&BlochVector::new(r).unwrap())
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn depolarizing_reference_pattern() {
        let c = depolarizing(0.36).unwrap();
        let p = pattern(&c, &rho_from([0.3, -0.1, 0.2]), 0).unwrap();
        assert!(close(p.value, Complex64::new(0.8, 0.0), 1e-15));
        assert_eq!(p.phase, 0.0);
        assert!(p.phase_defined);
    }

    #[test]
    fn depolarizing_phase_flip_pattern() {
        let c = depolarizing(0.3).unwrap();
        let p = pattern(&c, &rho_from([0., 0., 0.5]), 3).unwrap();
        assert!(close(p.value, Complex64::new(0.1f64.sqrt() * 0.5, 0.0), 1e-15));
        assert!((p.visibility - 0.158113883008419).abs() < 1e-12);
    }

    #[test]
    fn amplitude_damping_emission_pattern() {
        let c = amplitude_damping(0.25).unwrap();
        let p = pattern(&c, &rho_from([0., 1., 0.]), 1).unwrap();
        assert!(close(p.value, Complex64::new(0.0, 0.25), 1e-15));
        assert!((p.phase - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn pattern_index_out_of_range() {
        let c = amplitude_damping(0.25).unwrap();
        assert!(matches!(
            pattern(&c, &rho_from([0., 0., 0.]), 2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn unitary_pattern_set_is_delta() {
        let mut rng = StdRng::seed_from_u64(8);
        let u = random::unitary(&mut rng, 2);
        let c = KrausChannel::unitary(u, 4).unwrap();
        let set = pattern_set(&c, &rho_from([0.1, 0.2, 0.3])).unwrap();
        assert_eq!(set.len(), 4);
        for p in &set[1..] {
            assert_eq!(p.visibility, 0.0);
            assert!(!p.phase_defined);
        }
    }

    #[test]
    fn identity_pattern_set() {
        let set = pattern_set(&KrausChannel::identity(2), &rho_from([0., 0., 0.])).unwrap();
        assert_eq!(set.len(), 1);
        assert!(close(set[0].value, Complex64::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn depolarizing_pattern_set_values() {
        let set = pattern_set(&depolarizing(0.3).unwrap(), &rho_from([0.2, 0.4, 0.6])).unwrap();
        let s = 0.1f64.sqrt();
        let expected = [0.7f64.sqrt(), s * 0.2, s * 0.4, s * 0.6];
        for (p, e) in set.iter().zip(expected) {
            assert!(close(p.value, Complex64::new(e, 0.0), 1e-15));
            assert_eq!(p.phase, 0.0);
        }
    }

    #[test]
    fn flip_operators() {
        assert_eq!(flip_operator(4, 0).unwrap(), ComplexMatrix::identity(4));
        assert_eq!(
            flip_operator(2, 1).unwrap(),
            ComplexMatrix::from_real(&[&[0., 1.], &[1., 0.]]).unwrap()
        );
        let f = flip_operator(4, 2).unwrap();
        let expected = ComplexMatrix::from_real(&[
            &[0., 0., 1., 0.],
            &[0., 1., 0., 0.],
            &[1., 0., 0., 0.],
            &[0., 0., 0., 1.],
        ])
        .unwrap();
        assert_eq!(f, expected);
        assert!(flip_operator(3, 3).is_err());
    }

    #[test]
    fn dilation_route_identity() {
        let d = dilate(&KrausChannel::identity(2)).unwrap();
        let p = pattern_via_dilation(&d, &rho_from([0.3, 0.3, 0.3]), 0).unwrap();
        assert!(close(p.value, Complex64::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn dilation_route_amplitude_damping() {
        let d = dilate(&amplitude_damping(0.5).unwrap()).unwrap();
        let p = pattern_via_dilation(&d, &rho_from([1., 0., 0.]), 1).unwrap();
        assert!(close(p.value, Complex64::new(0.5f64.sqrt() / 2.0, 0.0), 1e-14));
    }

    #[test]
    fn purification_route_cases() {
        let pure = rho_from([0., 0., 1.]);
        let p = pattern_via_purification(&KrausChannel::identity(2), &pure, 0).unwrap();
        assert!(close(p.value, Complex64::new(1.0, 0.0), 1e-15));

        let c = amplitude_damping(0.25).unwrap();
        let p = pattern_via_purification(&c, &rho_from([1., 0., 0.]), 1).unwrap();
        assert!(close(p.value, Complex64::new(0.25, 0.0), 1e-14));
    }

    #[test]
    fn routes_agree_on_depolarizing() {
        let mut rng = StdRng::seed_from_u64(12);
        let c = depolarizing(0.3).unwrap();
        let d = dilate(&c).unwrap();
        for _ in 0..50 {
            let rho = density_from_bloch(&random::bloch_vector(&mut rng));
            for mu in 0..4 {
                let a = pattern(&c, &rho, mu).unwrap().value;
                let b = pattern_via_dilation(&d, &rho, mu).unwrap().value;
                let p = pattern_via_purification(&c, &rho, mu).unwrap().value;
                assert!(close(a, b, 1e-10) && close(a, p, 1e-10));
            }
        }
    }

    #[test]
    fn fringe_extremes() {
        let p = InterferencePattern::new(0, Complex64::new(1.0, 0.0));
        let i = fringe(&p, &[0.0, PI]);
        assert!((i[0] - 1.0).abs() < 1e-15);
        assert!(i[1].abs() < 1e-15);
        let p = InterferencePattern::new(0, Complex64::new(0.8, 0.0));
        assert!((fringe(&p, &[PI / 2.0])[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fringe_flat_when_phase_undefined() {
        let p = InterferencePattern::new(2, Complex64::new(1e-12, 0.0));
        assert!(!p.phase_defined);
        assert!(fringe(&p, &linspace(0.0, 6.0, 7)).iter().all(|&x| x == 0.5));
    }

    #[test]
    fn fringe_maximum_tracks_phase() {
        let alpha = 1.234;
        let p = InterferencePattern::new(0, Complex64::from_polar(0.3, alpha));
        let grid = linspace(-PI, PI, 2001);
        let intensities = fringe(&p, &grid);
        let (imax, _) = intensities
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert!((grid[imax] - alpha).abs() <= grid[1] - grid[0]);
    }

    #[test]
    fn phase_branch_is_half_open() {
        let p = InterferencePattern::new(0, Complex64::new(-1.0, -0.0));
        assert_eq!(p.phase, PI);
    }
}
