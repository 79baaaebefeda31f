//! Oriented solid angles: exact polygon values against the discretized
//! line integral.

use std::f64::consts::PI;

use cp_phase::geometry::{solid_angle, triangle_with_solid_angle, BlochLoop};

fn main() -> cp_phase::Result<()> {
    let octant = BlochLoop::geodesic_polygon(vec![[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])?;
    println!("octant z->x->y        {:+.8}", solid_angle(&octant)?);
    println!("octant reversed       {:+.8}", solid_angle(&octant.reversed())?);
    println!("octant, 10^4 samples  {:+.8}", solid_angle(&octant.sample(10_000)?)?);

    let theta0 = PI / 3.0;
    let cap = BlochLoop::latitude_circle(theta0, 10_000)?;
    println!(
        "latitude pi/3         {:+.8} (2pi(1 - cos) = {:.8})",
        solid_angle(&cap)?,
        2.0 * PI * (1.0 - theta0.cos())
    );

    let tri = BlochLoop::geodesic_polygon(triangle_with_solid_angle(1.5 * PI)?.to_vec())?;
    println!("triangle for 3pi/2    {:+.8}", solid_angle(&tri)?);
    Ok(())
}
