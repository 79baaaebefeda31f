//! The same pattern computed three ways: Kraus trace, dilation unitary and
//! purification overlap, over random channels and states.

use cp_phase::channels::dilate;
use cp_phase::interferometry::{pattern, pattern_via_dilation, purification_overlap};
use cp_phase::random;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() -> cp_phase::Result<()> {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let n = rng.random_range(1..=3);
        let k = rng.random_range(1..=9);
        let channel = random::channel(&mut rng, n, k);
        let rho = random::density_matrix(&mut rng, n);
        let d = dilate(&channel)?;
        for mu in 0..k {
            let a = pattern(&channel, &rho, mu)?.value;
            let b = pattern_via_dilation(&d, &rho, mu)?.value;
            let c = purification_overlap(&d, &rho, mu)?.value;
            worst = worst.max((a - b).norm()).max((a - c).norm()).max((b - c).norm());
        }
    }
    println!("max pairwise deviation over 50 random instances: {worst:.3e}");
    Ok(())
}
