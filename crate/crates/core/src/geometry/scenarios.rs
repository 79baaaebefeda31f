//! Closed-form pattern sets for the two qubit loop scenarios built on the
//! depolarizing channel, with ρ = ½(I + r σ_z).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    /// Depolarizing channel after a cyclic, parallel-transporting loop that
    /// encloses solid angle `omega`, taken with the orientation for which the
    /// +z eigenvector picks up the phase +Ω/2.
    DepolCyclic { p: f64, r: f64, omega: f64 },
    /// Depolarizing channel after the bit-flip transporter
    /// e^{-i(π/2)(cos φ σ_x + sin φ σ_y)}.
    DepolBitflip { p: f64, r: f64, phi: f64 },
}

/// Predicted (mu = 0..3) pattern values for a scenario.
///
/// DepolCyclic: √(1-p)(cos(Ω/2) + ir sin(Ω/2)), 0, 0, √(p/3)(r cos(Ω/2) + i sin(Ω/2)).
/// DepolBitflip: 0, √(p/3) e^{-iπ/2}(cos φ + ir sin φ), √(p/3) e^{-iπ}(r cos φ + i sin φ), 0.
pub fn predicted_scenario_patterns(scenario: &Scenario) -> Result<Vec<Complex64>> {
    let (p, r) = match *scenario {
        Scenario::DepolCyclic { p, r, .. } | Scenario::DepolBitflip { p, r, .. } => (p, r),
    };
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("Bloch length r = {r} outside [0, 1]")));
    }
    let keep = (1.0 - p).sqrt();
    let flip = (p / 3.0).sqrt();
    let zero = Complex64::new(0.0, 0.0);
    let values = match *scenario {
        Scenario::DepolCyclic { omega, .. } => {
            let (s, c) = (omega / 2.0).sin_cos();
            vec![
                Complex64::new(c, r * s) * keep,
                zero,
                zero,
                Complex64::new(r * c, s) * flip,
            ]
        }
        Scenario::DepolBitflip { phi, .. } => {
            let (s, c) = phi.sin_cos();
            vec![
                zero,
                Complex64::from_polar(flip, -PI / 2.0) * Complex64::new(c, r * s),
                Complex64::from_polar(flip, -PI) * Complex64::new(r * c, s),
                zero,
            ]
        }
    };
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn cyclic_without_loop() {
        let (p, r) = (0.3, 0.6);
        let v = predicted_scenario_patterns(&Scenario::DepolCyclic { p, r, omega: 0.0 }).unwrap();
        assert!((v[0] - Complex64::new((1.0 - p).sqrt(), 0.0)).norm() < 1e-15);
        assert_eq!(v[1], Complex64::new(0.0, 0.0));
        assert_eq!(v[2], Complex64::new(0.0, 0.0));
        assert!((v[3] - Complex64::new(r * (p / 3.0).sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bitflip_quarter_turn() {
        let (p, r) = (0.3, 0.5);
        let v = predicted_scenario_patterns(&Scenario::DepolBitflip { p, r, phi: FRAC_PI_2 }).unwrap();
        assert!((v[1] - Complex64::new(r * (p / 3.0).sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bitflip_zero_azimuth() {
        let (p, r) = (0.3, 0.5);
        let v = predicted_scenario_patterns(&Scenario::DepolBitflip { p, r, phi: 0.0 }).unwrap();
        assert!((v[2] - Complex64::new(-r * (p / 3.0).sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn out_of_range() {
        assert!(predicted_scenario_patterns(&Scenario::DepolCyclic { p: 1.2, r: 0.5, omega: 1.0 }).is_err());
        assert!(predicted_scenario_patterns(&Scenario::DepolBitflip { p: 0.2, r: 1.5, phi: 1.0 }).is_err());
    }
}
