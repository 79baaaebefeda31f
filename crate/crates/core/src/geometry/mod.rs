//! Polar decomposition of Kraus operators, parallel transport, cyclic
//! geometric phases and Bloch-sphere solid angles.

mod cyclic;
mod polar;
mod scenarios;
mod solid_angle;
mod su2;
mod transport;

pub use cyclic::{
    geometric_phase_cyclic, geometric_phase_cyclic_in_basis, transported_patterns,
    TransportedPatterns, CYCLIC_TOL,
};
pub use polar::{polar_decompose, PolarFactors};
pub use scenarios::{predicted_scenario_patterns, Scenario};
pub use solid_angle::{solid_angle, triangle_with_solid_angle, BlochLoop};
pub use su2::{gauge_shift, qubit_pattern_closed_form, su2_exp, GaugeShift, Su2Params};
pub use transport::{
    axis_rotation_path, geodesic_polygon_path, pt_correct, pt_residual, KrausPath,
    KrausTrajectory, UnitaryPath,
};
