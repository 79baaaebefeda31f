//! Completely positive maps in Kraus form, the preset qubit channels, and
//! conversion to and from a system-environment unitary.
//!
//! Composite indices are system-major: |i>|mu_e> sits at `i * env_dim + mu`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{complete_to_unitary, pauli, tol, ComplexMatrix};
use crate::states::DensityMatrix;

/// Ordered Kraus operators m_0..m_{K-1} with Σ m^† m = I.
///
/// The order matters: index mu is also the environment state the reference
/// beam is flipped to when reading out the mu-th interference pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    sys_dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(kraus, tol::STRUCTURAL)
    }

    pub fn with_tolerance(kraus: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidParameter("a channel needs at least one Kraus operator".into()))?;
        let n = first.rows();
        for (mu, m) in kraus.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator {mu} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let channel = Self { sys_dim: n, kraus };
        let residual = channel.completeness_residual();
        if residual > tol {
            return Err(Error::Completeness { residual });
        }
        Ok(channel)
    }

    /// m_0 = I with K = 1.
    pub fn identity(n: usize) -> Self {
        Self {
            sys_dim: n,
            kraus: vec![ComplexMatrix::identity(n)],
        }
    }

    /// Unitary evolution embedded with `env_dim` slots: m_0 = u, m_mu = 0 otherwise.
    pub fn unitary(u: ComplexMatrix, env_dim: usize) -> Result<Self> {
        if env_dim == 0 {
            return Err(Error::InvalidParameter("environment dimension must be at least 1".into()));
        }
        let n = u.rows();
        let mut kraus = vec![u];
        kraus.extend((1..env_dim).map(|_| ComplexMatrix::zeros(n, n)));
        Self::new(kraus)
    }

    pub fn sys_dim(&self) -> usize {
        self.sys_dim
    }

    pub fn env_dim(&self) -> usize {
        self.kraus.len()
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn operator(&self, mu: usize) -> Result<&ComplexMatrix> {
        self.kraus.get(mu).ok_or(Error::IndexOutOfRange {
            index: mu,
            len: self.kraus.len(),
        })
    }

    /// max |Σ m^† m - I|
    pub fn completeness_residual(&self) -> f64 {
        let sum = self
            .kraus
            .iter()
            .fold(ComplexMatrix::zeros(self.sys_dim, self.sys_dim), |acc, m| {
                acc + &m.adjoint() * m
            });
        sum.max_abs_diff(&ComplexMatrix::identity(self.sys_dim))
    }

    /// Largest entrywise deviation between the Kraus lists of two channels
    /// with the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.env_dim(), other.env_dim(), "channels differ in env_dim");
        self.kraus
            .iter()
            .zip(&other.kraus)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

/// Depolarizing qubit channel: √(1-p) I, √(p/3) σ_x, √(p/3) σ_y, √(p/3) σ_z.
///
/// p > 3/4 is accepted; the Bloch vector is then inverted as well as shrunk.
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    let a = (1.0 - p).sqrt();
    let b = (p / 3.0).sqrt();
    Ok(KrausChannel {
        sys_dim: 2,
        kraus: vec![
            pauli::identity().scale_real(a),
            pauli::x().scale_real(b),
            pauli::y().scale_real(b),
            pauli::z().scale_real(b),
        ],
    })
}

/// Amplitude damping with decay probability p:
/// m_0 = ½(I + σ_z) + ½√(1-p)(I - σ_z), m_1 = ½√p(σ_x + iσ_y).
pub fn amplitude_damping(p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    let i2 = pauli::identity();
    let z = pauli::z();
    let m0 = (&i2 + &z).scale_real(0.5) + (&i2 - &z).scale_real(0.5 * (1.0 - p).sqrt());
    let m1 = (pauli::x() + pauli::y().scale(Complex64::new(0.0, 1.0))).scale_real(0.5 * p.sqrt());
    Ok(KrausChannel {
        sys_dim: 2,
        kraus: vec![m0, m1],
    })
}

/// ρ' = Σ m ρ m^†.
pub fn apply(c: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != c.sys_dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on dimension {}, state has dimension {}",
            c.sys_dim(),
            rho.dim()
        )));
    }
    let n = c.sys_dim();
    let out = c.kraus.iter().fold(ComplexMatrix::zeros(n, n), |acc, m| {
        acc + &(m * rho.matrix()) * &m.adjoint()
    });
    DensityMatrix::with_tolerance(out, tol::STRUCTURAL)
}

/// Replaces every m_mu by m_mu w (w applied first).
pub fn compose_unitary(c: &KrausChannel, w: &ComplexMatrix) -> Result<KrausChannel> {
    if w.rows() != c.sys_dim() || w.cols() != c.sys_dim() {
        return Err(Error::DimensionMismatch(format!(
            "unitary is {}x{}, channel dimension is {}",
            w.rows(),
            w.cols(),
            c.sys_dim()
        )));
    }
    let residual = w.unitarity_residual();
    if residual > tol::STRUCTURAL {
        return Err(Error::NotUnitary { residual });
    }
    KrausChannel::new(c.kraus.iter().map(|m| m * w).collect())
}

/// Unitary U_ie on system ⊗ environment; the environment starts in |0_e>.
#[derive(Debug, Clone, PartialEq)]
pub struct Dilation {
    sys_dim: usize,
    env_dim: usize,
    u: ComplexMatrix,
}

impl Dilation {
    pub fn new(sys_dim: usize, env_dim: usize, u: ComplexMatrix) -> Result<Self> {
        let side = sys_dim * env_dim;
        if side == 0 || u.rows() != side || u.cols() != side {
            return Err(Error::DimensionMismatch(format!(
                "dilation unitary is {}x{}, expected {side}x{side}",
                u.rows(),
                u.cols()
            )));
        }
        let residual = u.unitarity_residual();
        if residual > tol::STRUCTURAL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { sys_dim, env_dim, u })
    }

    pub fn sys_dim(&self) -> usize {
        self.sys_dim
    }

    pub fn env_dim(&self) -> usize {
        self.env_dim
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.u
    }

    /// Environment reference state index.
    pub fn ref_env_index(&self) -> usize {
        0
    }

    /// <mu_e| U |0_e> as an N x N matrix.
    pub fn env_block(&self, mu: usize) -> Result<ComplexMatrix> {
        env_block(&self.u, self.sys_dim, self.env_dim, mu)
    }
}

pub(crate) fn env_block(u: &ComplexMatrix, n: usize, k: usize, mu: usize) -> Result<ComplexMatrix> {
    if mu >= k {
        return Err(Error::IndexOutOfRange { index: mu, len: k });
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, u.get(i * k + mu, j * k));
        }
    }
    Ok(m)
}

/// Builds U_ie whose reference block column <mu_e|U_ie|0_e> is the Kraus list.
///
/// The remaining columns come from the deterministic completion in
/// [`complete_to_unitary`]; any other completion is an equally valid dilation.
pub fn dilate(c: &KrausChannel) -> Result<Dilation> {
    let (n, k) = (c.sys_dim(), c.env_dim());
    let side = n * k;
    let mut block = ComplexMatrix::zeros(side, n);
    for (mu, m) in c.kraus.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                block.set(i * k + mu, j, m.get(i, j));
            }
        }
    }
    let completed = complete_to_unitary(&block).map_err(|e| match e {
        Error::NotOrthonormal { .. } => Error::Completeness {
            residual: c.completeness_residual(),
        },
        other => other,
    })?;

    // Block column j goes to |j>|0_e>; completion columns fill the rest in order.
    let mut u = ComplexMatrix::zeros(side, side);
    let mut extra = n;
    for col in 0..side {
        let src = if col % k == 0 {
            col / k
        } else {
            let s = extra;
            extra += 1;
            s
        };
        u.set_column(col, &completed.column(src));
    }
    Dilation::new(n, k, u)
}

/// m_mu = <mu_e| U_ie |0_e>.
pub fn kraus_from_dilation(d: &Dilation) -> Result<KrausChannel> {
    let kraus = (0..d.env_dim)
        .map(|mu| d.env_block(mu))
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(kraus)
}
