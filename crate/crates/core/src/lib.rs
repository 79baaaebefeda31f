//! Interference patterns, relative phases and geometric phases for quantum
//! states evolving under completely positive maps.
//!
//! A state ρ in one arm of a Mach-Zehnder interferometer passes through a
//! channel with Kraus operators m_0..m_{K-1}; flipping the reference-arm
//! environment to |mu_e> exposes the pattern ν_mu e^{iα_mu} = Tr(m_mu ρ).
//! The crate computes these patterns along three independent routes (Kraus
//! trace, dilation unitary, purification overlap), renders fringes, and
//! handles the geometric side: polar decomposition of Kraus operators,
//! parallel transport of unitary paths, cyclic geometric phases and
//! solid angles on the Bloch sphere.
//!
//! ```
//! use cp_phase::channels::depolarizing;
//! use cp_phase::interferometry::pattern_set;
//! use cp_phase::states::{density_from_bloch, BlochVector};
//!
//! let rho = density_from_bloch(&BlochVector::new([0.0, 0.0, 0.5]).unwrap());
//! let patterns = pattern_set(&depolarizing(0.3).unwrap(), &rho).unwrap();
//! assert!((patterns[0].visibility - 0.7f64.sqrt()).abs() < 1e-12);
//! ```

pub mod channels;
pub mod cli;
mod error;
pub mod geometry;
pub mod interferometry;
pub mod numerics;
pub mod random;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
