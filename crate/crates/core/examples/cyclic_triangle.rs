//! Geometric phase of a mixed qubit carried around geodesic triangles and
//! then depolarized, compared with the closed-form prediction.

use std::f64::consts::PI;

use cp_phase::channels::depolarizing;
use cp_phase::geometry::{
    geodesic_polygon_path, predicted_scenario_patterns, solid_angle, transported_patterns,
    triangle_with_solid_angle, BlochLoop, Scenario,
};
use cp_phase::states::{density_from_bloch, BlochVector};

fn main() -> cp_phase::Result<()> {
    let (p, r) = (0.3, 0.9);
    let rho = density_from_bloch(&BlochVector::new([0.0, 0.0, r])?);
    let channel = depolarizing(p)?;
    for omega in [PI / 2.0, PI, 1.5 * PI] {
        // Traversed clockwise, so the +z eigenvector gains +Ω/2.
        let [a, b, c] = triangle_with_solid_angle(omega)?;
        let vertices = vec![a, c, b];
        let signed = solid_angle(&BlochLoop::geodesic_polygon(vertices.clone())?)?;
        let path = geodesic_polygon_path(&vertices, 500)?;
        let got = transported_patterns(&channel, &rho, &path)?;
        let want = predicted_scenario_patterns(&Scenario::DepolCyclic { p, r, omega })?;
        println!("Omega = {omega:.4} (signed {signed:+.4})");
        for (g, w) in got.patterns.iter().zip(&want) {
            println!("  mu={}  {:.6}  predicted {:.6}", g.mu, g.value, w);
        }
    }
    Ok(())
}
