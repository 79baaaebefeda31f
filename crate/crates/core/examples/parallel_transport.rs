//! Removes the dynamical phase from a random smooth unitary path.

use cp_phase::geometry::{pt_correct, pt_residual, UnitaryPath};
use cp_phase::numerics::unitary_exp;
use cp_phase::random;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() -> cp_phase::Result<()> {
    let mut rng = StdRng::seed_from_u64(3);
    let (h1, h2) = (random::hermitian(&mut rng, 3), random::hermitian(&mut rng, 3));
    let times: Vec<f64> = (0..=1000).map(|j| j as f64 / 1000.0).collect();
    let path = UnitaryPath::from_fn(times, |t| {
        &unitary_exp(&h1, t).expect("Hermitian") * &unitary_exp(&h2, t * t).expect("Hermitian")
    })?;

    let basis = random::density_matrix(&mut rng, 3).eigen().vectors;
    let corrected = pt_correct(&path, &basis)?;
    println!("residual before {:.3e}", pt_residual(&path, &basis)?);
    println!("residual after  {:.3e}", pt_residual(&corrected, &basis)?);
    let again = pt_correct(&corrected, &basis)?;
    println!("second correction changes the path by {:.3e}", again.max_abs_diff(&corrected));
    Ok(())
}
