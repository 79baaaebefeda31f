//! Qubit closed forms: SU(2) exponentials, the pattern of a polar-decomposed
//! Kraus operator, and the effect of an extra rotation on the unitary factor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{pauli, tol, ComplexMatrix};
use crate::states::{norm3, BlochVector};

/// e^{-iθ e·σ}: half-angle θ about the unit axis e.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Params {
    pub theta: f64,
    pub axis: [f64; 3],
}

impl Su2Params {
    pub fn new(theta: f64, axis: [f64; 3]) -> Result<Self> {
        let len = norm3(axis);
        if !theta.is_finite() || (len - 1.0).abs() > tol::EQUALITY {
            return Err(Error::InvalidParameter(format!(
                "SU(2) axis must be a unit vector (length {len})"
            )));
        }
        Ok(Self { theta, axis })
    }
}

/// cos θ I - i sin θ (e·σ)
pub fn su2_exp(p: &Su2Params) -> ComplexMatrix {
    let (s, c) = p.theta.sin_cos();
    pauli::identity().scale_real(c) - pauli::dot(p.axis).scale(Complex64::new(0.0, s))
}

/// Tr(ρ h u) for ρ = ½(I + r·σ), h = a + b·σ and u = e^{-iθ e·σ}:
///
/// (a + r·b) cos θ + ((e × r)·b) sin θ - i (e·b + a r·e) sin θ
pub fn qubit_pattern_closed_form(
    a: f64,
    b: [f64; 3],
    u: &Su2Params,
    r: &BlochVector,
) -> Result<Complex64> {
    let b_norm = norm3(b);
    if a < b_norm - tol::EQUALITY {
        return Err(Error::NotPositiveFactor { a, b_norm });
    }
    let r = r.components();
    let e = u.axis;
    let (s, c) = u.theta.sin_cos();
    let re = (a + dot(r, b)) * c + dot(cross(e, r), b) * s;
    let im = -(dot(e, b) + a * dot(r, e)) * s;
    Ok(Complex64::new(re, im))
}

/// Result of appending e^{-iγ n·σ} to e^{-iθ e·σ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeShift {
    /// θ̃ in [0, π] and axis ẽ.
    pub params: Su2Params,
    /// sin θ̃ ≈ 0: the axis is undefined and set to +z.
    pub degenerate: bool,
}

/// (θ̃, ẽ) with e^{-iθ e·σ} e^{-iγ n·σ} = e^{-iθ̃ ẽ·σ}:
///
/// cos θ̃ = cos θ cos γ - (e·n) sin θ sin γ
/// ẽ sin θ̃ = n cos θ sin γ + e sin θ cos γ + (e × n) sin θ sin γ
pub fn gauge_shift(u: &Su2Params, gamma: f64, n: [f64; 3]) -> Result<GaugeShift> {
    let n_len = norm3(n);
    if !gamma.is_finite() || (n_len - 1.0).abs() > tol::EQUALITY {
        return Err(Error::InvalidParameter(format!(
            "rotation axis must be a unit vector (length {n_len})"
        )));
    }
    let e = u.axis;
    let (st, ct) = u.theta.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    let cos_new = ct * cg - dot(e, n) * st * sg;
    let en = cross(e, n);
    let vec: [f64; 3] = std::array::from_fn(|i| n[i] * ct * sg + e[i] * st * cg + en[i] * st * sg);
    let sin_new = norm3(vec);
    let theta = sin_new.atan2(cos_new);
    if sin_new < tol::EQUALITY {
        return Ok(GaugeShift {
            params: Su2Params {
                theta,
                axis: [0.0, 0.0, 1.0],
            },
            degenerate: true,
        });
    }
    Ok(GaugeShift {
        params: Su2Params {
            theta,
            axis: vec.map(|x| x / sin_new),
        },
        degenerate: false,
    })
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
