//! Discretized unitary paths and parallel transport along them.
//!
//! A path ũ(t) is parallel-transporting in the basis {|k>} when
//! <k|ũ^†(t) dũ/dt(t)|k> = 0 for every k. [`pt_correct`] removes the
//! accumulated per-eigenvector phase from any path by right-multiplying with
//! a diagonal phase matrix, and [`pt_residual`] measures how far a path is
//! from satisfying the condition.

use num_complex::Complex64;

use super::polar::polar_decompose;
use super::su2::{cross, dot, su2_exp, Su2Params};
use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::numerics::{tol, ComplexMatrix};
use crate::states::norm3;

/// Samples u(t_0), ..., u(t_T) of a unitary path with t_0 = 0 and u(t_0) = I.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryPath {
    times: Vec<f64>,
    unitaries: Vec<ComplexMatrix>,
}

impl UnitaryPath {
    pub fn new(times: Vec<f64>, unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        if times.is_empty() || times.len() != unitaries.len() {
            return Err(Error::InvalidPath(format!(
                "{} times for {} unitaries",
                times.len(),
                unitaries.len()
            )));
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidPath(format!("path must start at t = 0, got {}", times[0])));
        }
        if times.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::InvalidPath("times must be strictly increasing".into()));
        }
        let n = unitaries[0].rows();
        for u in &unitaries {
            if u.rows() != n || u.cols() != n {
                return Err(Error::DimensionMismatch("path unitaries differ in shape".into()));
            }
            let residual = u.unitarity_residual();
            if residual > tol::STRUCTURAL {
                return Err(Error::NotUnitary { residual });
            }
        }
        let start = unitaries[0].max_abs_diff(&ComplexMatrix::identity(n));
        if start > tol::EQUALITY {
            return Err(Error::InvalidPath(format!(
                "path must start at the identity (deviation {start:.3e})"
            )));
        }
        Ok(Self { times, unitaries })
    }

    /// Samples `f` on `times`.
    pub fn from_fn<F>(times: Vec<f64>, f: F) -> Result<Self>
    where
        F: Fn(f64) -> ComplexMatrix,
    {
        let unitaries = times.iter().map(|&t| f(t)).collect();
        Self::new(times, unitaries)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.unitaries[0].rows()
    }

    pub fn last(&self) -> &ComplexMatrix {
        self.unitaries.last().expect("paths are non-empty")
    }

    /// Largest entrywise deviation between two paths sampled at the same times.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len(), "paths differ in length");
        self.unitaries
            .iter()
            .zip(&other.unitaries)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Pointwise product u(t) w(t) of two paths on the same grid.
    pub fn pointwise_product(&self, other: &Self) -> Result<Self> {
        if self.times != other.times {
            return Err(Error::InvalidPath("paths are sampled on different grids".into()));
        }
        let unitaries = self
            .unitaries
            .iter()
            .zip(&other.unitaries)
            .map(|(a, b)| a * b)
            .collect();
        Self::new(self.times.clone(), unitaries)
    }
}

fn check_basis(path: &UnitaryPath, basis: &ComplexMatrix) -> Result<()> {
    if basis.rows() != path.dim() || basis.cols() != path.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis is {}x{}, path dimension is {}",
            basis.rows(),
            basis.cols(),
            path.dim()
        )));
    }
    let residual = basis.unitarity_residual();
    if residual > tol::STRUCTURAL {
        return Err(Error::NotOrthonormal {
            row: 0,
            col: 0,
            deviation: residual,
        });
    }
    Ok(())
}

/// Diagonal elements <k|m|k> in the given basis.
fn diagonal_in(basis: &ComplexMatrix, m: &ComplexMatrix) -> Vec<Complex64> {
    (&(&basis.adjoint() * m) * basis).diagonal()
}

/// max over k and interior samples of |<k|u^†(t_j) u̇(t_j)|k>|.
///
/// u̇ is the three-point central difference (second order on non-uniform
/// grids). Because u^†u̇ is anti-Hermitian for an exact derivative, only the
/// anti-Hermitian part of the estimate is kept, i.e. |Im <k|u^† u̇|k>|.
pub fn pt_residual(path: &UnitaryPath, basis: &ComplexMatrix) -> Result<f64> {
    if path.len() < 3 {
        return Err(Error::TooFewSamples {
            required: 3,
            got: path.len(),
        });
    }
    check_basis(path, basis)?;
    let (t, u) = (&path.times, &path.unitaries);
    let mut worst = 0.0_f64;
    for j in 1..path.len() - 1 {
        let hm = t[j] - t[j - 1];
        let hp = t[j + 1] - t[j];
        let forward = &u[j + 1] - &u[j];
        let backward = &u[j] - &u[j - 1];
        let derivative = (forward.scale_real(hm * hm) + backward.scale_real(hp * hp))
            .scale_real(1.0 / (hp * hm * (hp + hm)));
        let generator = &u[j].adjoint() * &derivative;
        for z in diagonal_in(basis, &generator) {
            worst = worst.max(z.im.abs());
        }
    }
    Ok(worst)
}

/// Parallel-transported version ũ(t_j) = u(t_j) d(t_j) of a path.
///
/// d is diagonal in `basis` with phases e^{iφ_k}. Each step adds
/// φ_k(t_{j+1}) - φ_k(t_j) = -arg <k|u^†(t_j) u(t_{j+1})|k>, the discrete
/// form of φ_k(t) = i∫<k|u^† u̇|k> dt; it cancels any diagonal gauge
/// exactly and leaves already-transported paths untouched. Evolution of a
/// state diagonal in `basis` is unchanged at every sample.
pub fn pt_correct(path: &UnitaryPath, basis: &ComplexMatrix) -> Result<UnitaryPath> {
    if path.len() < 3 {
        return Err(Error::TooFewSamples {
            required: 3,
            got: path.len(),
        });
    }
    check_basis(path, basis)?;
    let n = path.dim();
    let b_adj = basis.adjoint();
    let mut phases = vec![0.0_f64; n];
    let mut out = Vec::with_capacity(path.len());
    out.push(ComplexMatrix::identity(n));
    for j in 0..path.len() - 1 {
        let step = &path.unitaries[j].adjoint() * &path.unitaries[j + 1];
        let overlaps = (&(&b_adj * &step) * basis).diagonal();
        for (k, z) in overlaps.iter().enumerate() {
            if z.norm() < 1e-6 {
                return Err(Error::InvalidPath(format!(
                    "step {j} is too coarse to transport eigenvector {k} (overlap {:.3e})",
                    z.norm()
                )));
            }
            phases[k] -= z.arg();
        }
        let diag: Vec<Complex64> = phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
        let d = &(basis * &ComplexMatrix::from_diagonal(&diag)) * &b_adj;
        out.push(&path.unitaries[j + 1] * &d);
    }
    UnitaryPath::new(path.times.clone(), out)
}

/// SU(2) path that carries the Bloch vector of |0> (initially `vertices[0]`,
/// which should be +z for that reading) along the great-circle edges of the
/// closed polygon `vertices`.
///
/// Each edge a -> b is the rotation about a×b and is itself parallel
/// transporting for states on that great circle. Time runs with arc length,
/// `steps_per_edge` steps per edge.
pub fn geodesic_polygon_path(vertices: &[[f64; 3]], steps_per_edge: usize) -> Result<UnitaryPath> {
    if steps_per_edge == 0 {
        return Err(Error::InvalidPath("steps_per_edge must be positive".into()));
    }
    let verts = super::solid_angle::closed_vertices(vertices)?;
    let n = verts.len();
    let mut times = vec![0.0];
    let mut unitaries = vec![ComplexMatrix::identity(2)];
    let mut base = ComplexMatrix::identity(2);
    let mut t0 = 0.0;
    for i in 0..n {
        let (a, b) = (verts[i], verts[(i + 1) % n]);
        let (axis, angle) = geodesic(a, b, i, (i + 1) % n)?;
        for s in 1..=steps_per_edge {
            let frac = s as f64 / steps_per_edge as f64;
            let rot = su2_exp(&Su2Params {
                theta: 0.5 * angle * frac,
                axis,
            });
            times.push(t0 + angle * frac);
            unitaries.push(&rot * &base);
        }
        base = unitaries.last().expect("just pushed").clone();
        t0 += angle;
    }
    UnitaryPath::new(times, unitaries)
}

/// e^{-i (angle t / 2) axis·σ} for t in [0, 1]: Bloch-sphere rotation by
/// `angle` about `axis`, `steps` uniform steps.
pub fn axis_rotation_path(axis: [f64; 3], angle: f64, steps: usize) -> Result<UnitaryPath> {
    if steps == 0 {
        return Err(Error::InvalidPath("steps must be positive".into()));
    }
    let len = norm3(axis);
    if len < tol::EQUALITY || !angle.is_finite() {
        return Err(Error::InvalidParameter("rotation needs a nonzero axis and finite angle".into()));
    }
    let axis = axis.map(|x| x / len);
    let times = (0..=steps).map(|j| j as f64 / steps as f64).collect();
    UnitaryPath::from_fn(times, |t| {
        su2_exp(&Su2Params {
            theta: 0.5 * angle * t,
            axis,
        })
    })
}

fn geodesic(a: [f64; 3], b: [f64; 3], ia: usize, ib: usize) -> Result<([f64; 3], f64)> {
    let axb = cross(a, b);
    let s = norm3(axb);
    let c = dot(a, b);
    if s < 1e-12 {
        return if c < 0.0 {
            Err(Error::AntipodalVertices(ia, ib))
        } else {
            Err(Error::InvalidPath(format!("vertices {ia} and {ib} coincide")))
        };
    }
    Ok((axb.map(|x| x / s), s.atan2(c)))
}

/// Time-sampled Kraus channel m_mu(t_j), used to split each Kraus operator
/// into m_mu(t) = h_mu(t) v_mu ũ_mu(t).
#[derive(Debug, Clone)]
pub struct KrausPath {
    times: Vec<f64>,
    channels: Vec<KrausChannel>,
}

/// Decomposition of one Kraus index along a [`KrausPath`].
#[derive(Debug, Clone)]
pub struct KrausTrajectory {
    pub mu: usize,
    /// h_mu(t_j)
    pub hermitian: Vec<ComplexMatrix>,
    /// v_mu
    pub v: ComplexMatrix,
    /// ũ_mu(t_j) with ũ_mu(0) = I
    pub transporter: UnitaryPath,
}

impl KrausPath {
    /// Validates that all samples share shape and that the channel starts as
    /// a unitary channel in slot 0 (h_mu(0) = δ_{mu0}).
    pub fn new(times: Vec<f64>, channels: Vec<KrausChannel>) -> Result<Self> {
        if channels.is_empty() || channels.len() != times.len() {
            return Err(Error::InvalidPath(format!(
                "{} times for {} channel samples",
                times.len(),
                channels.len()
            )));
        }
        let (n, k) = (channels[0].sys_dim(), channels[0].env_dim());
        if channels.iter().any(|c| c.sys_dim() != n || c.env_dim() != k) {
            return Err(Error::DimensionMismatch("channel samples differ in shape".into()));
        }
        let start = &channels[0];
        let residual = start.kraus()[0].unitarity_residual();
        if residual > tol::STRUCTURAL {
            return Err(Error::InvalidPath(format!(
                "m_0(0) must be unitary (residual {residual:.3e})"
            )));
        }
        for (mu, m) in start.kraus().iter().enumerate().skip(1) {
            if m.max_abs() > tol::STRUCTURAL {
                return Err(Error::InvalidPath(format!("m_{mu}(0) must vanish")));
            }
        }
        Ok(Self { times, channels })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn channels(&self) -> &[KrausChannel] {
        &self.channels
    }

    /// Polar-decomposes every sample and factors out v_mu.
    ///
    /// v_mu is the unitary factor at the first sample where m_mu is nonzero
    /// (t = 0 for mu = 0); ũ_mu is the identity before that sample.
    pub fn decompose(&self) -> Result<Vec<KrausTrajectory>> {
        let n = self.channels[0].sys_dim();
        let mut out = Vec::new();
        for mu in 0..self.channels[0].env_dim() {
            let factors = self
                .channels
                .iter()
                .map(|c| polar_decompose(&c.kraus()[mu]))
                .collect::<Result<Vec<_>>>()?;
            let first = self
                .channels
                .iter()
                .position(|c| c.kraus()[mu].max_abs() > tol::STRUCTURAL);
            let (v, unitaries) = match first {
                Some(j0) => {
                    let v = factors[j0].u.clone();
                    let v_adj = v.adjoint();
                    let unitaries = factors
                        .iter()
                        .enumerate()
                        .map(|(j, f)| {
                            if j <= j0 {
                                ComplexMatrix::identity(n)
                            } else {
                                &v_adj * &f.u
                            }
                        })
                        .collect();
                    (v, unitaries)
                }
                None => (
                    ComplexMatrix::identity(n),
                    vec![ComplexMatrix::identity(n); self.channels.len()],
                ),
            };
            out.push(KrausTrajectory {
                mu,
                hermitian: factors.into_iter().map(|f| f.h).collect(),
                v,
                transporter: UnitaryPath::new(self.times.clone(), unitaries)?,
            });
        }
        Ok(out)
    }
}
