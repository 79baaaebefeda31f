//! Polar decomposition of a Kraus operator, the qubit closed form of its
//! pattern, and the effect of an extra rotation on the unitary factor.

use cp_phase::channels::amplitude_damping;
use cp_phase::geometry::{gauge_shift, polar_decompose, qubit_pattern_closed_form, su2_exp, Su2Params};
use cp_phase::interferometry::pattern;
use cp_phase::states::{density_from_bloch, BlochVector};

fn main() -> cp_phase::Result<()> {
    let channel = amplitude_damping(0.3)?;
    let m1 = &channel.kraus()[1];
    let f = polar_decompose(m1)?;
    println!("m_1 = h u, reconstruction error {:.3e}", f.product().max_abs_diff(m1));
    println!("h = {:?}", f.h);
    println!("u = {:?}", f.u);

    let r = BlochVector::new([0.2, -0.5, 0.4])?;
    let (a, b) = (0.9, [0.1, -0.2, 0.3]);
    let u = Su2Params::new(0.7, [0.0, 0.6, 0.8])?;
    let closed = qubit_pattern_closed_form(a, b, &u, &r)?;
    println!("closed-form Tr(rho h u) = {closed:.6}");

    let n = [0.0, 0.0, 1.0];
    let g = gauge_shift(&u, 0.4, n)?;
    println!(
        "adding e^(-i 0.4 sigma_z): theta {:.4} -> {:.4}, axis {:?}",
        u.theta, g.params.theta, g.params.axis
    );
    let product = &su2_exp(&u) * &su2_exp(&Su2Params::new(0.4, n)?);
    println!("product check {:.3e}", su2_exp(&g.params).max_abs_diff(&product));

    let rho = density_from_bloch(&r);
    println!("amplitude-damping pattern mu=1: {:.6}", pattern(&channel, &rho, 1)?.value);
    Ok(())
}
