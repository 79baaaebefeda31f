//! Visibilities and relative phases of a qubit sent through the depolarizing
//! and amplitude-damping channels.

use cp_phase::channels::{amplitude_damping, depolarizing};
use cp_phase::interferometry::pattern_set;
use cp_phase::states::{density_from_bloch, BlochVector};

fn main() -> cp_phase::Result<()> {
    let rho = density_from_bloch(&BlochVector::new([0.3, 0.4, 0.5])?);

    for (name, channel) in [
        ("depolarizing(0.3)", depolarizing(0.3)?),
        ("amplitude_damping(0.25)", amplitude_damping(0.25)?),
    ] {
        println!("{name}");
        for p in pattern_set(&channel, &rho)? {
            let phase = if p.phase_defined {
                format!("{:+.6}", p.phase)
            } else {
                "undefined".to_string()
            };
            println!("  mu={}  nu={:.6}  alpha={phase}", p.mu, p.visibility);
        }
    }
    Ok(())
}
