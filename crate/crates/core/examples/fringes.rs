//! Output intensity of the interferometer as the reference phase is scanned.

use std::f64::consts::PI;

use cp_phase::channels::amplitude_damping;
use cp_phase::interferometry::{fringe, linspace, pattern};
use cp_phase::states::{density_from_bloch, BlochVector};

fn main() -> cp_phase::Result<()> {
    let rho = density_from_bloch(&BlochVector::new([0.0, 1.0, 0.0])?);
    let channel = amplitude_damping(0.25)?;
    let chi = linspace(0.0, 2.0 * PI, 13);
    for mu in 0..2 {
        let pat = pattern(&channel, &rho, mu)?;
        println!("mu={mu} (nu={:.4}, alpha={:.4})", pat.visibility, pat.phase);
        for (c, i) in chi.iter().zip(fringe(&pat, &chi)) {
            let bar = "#".repeat((i * 40.0).round() as usize);
            println!("  {c:5.2}  {i:.4}  {bar}");
        }
    }
    Ok(())
}
