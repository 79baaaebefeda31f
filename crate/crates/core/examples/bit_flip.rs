//! A half turn about an equatorial axis swaps |0> and |1>; after depolarizing,
//! only the bit-flip and Y-error patterns survive.

use std::f64::consts::PI;

use cp_phase::channels::depolarizing;
use cp_phase::geometry::{axis_rotation_path, predicted_scenario_patterns, transported_patterns, Scenario};
use cp_phase::states::{density_from_bloch, BlochVector};

fn main() -> cp_phase::Result<()> {
    let (p, r) = (0.3, 0.5);
    let rho = density_from_bloch(&BlochVector::new([0.0, 0.0, r])?);
    let channel = depolarizing(p)?;
    for phi in [0.0, PI / 4.0, PI / 2.0] {
        let path = axis_rotation_path([phi.cos(), phi.sin(), 0.0], PI, 200)?;
        let got = transported_patterns(&channel, &rho, &path)?;
        let want = predicted_scenario_patterns(&Scenario::DepolBitflip { p, r, phi })?;
        println!("phi = {phi:.4}");
        for (g, w) in got.patterns.iter().zip(&want) {
            println!("  mu={}  nu={:.6}  {:.6}  predicted {:.6}", g.mu, g.visibility, g.value, w);
        }
    }
    Ok(())
}
