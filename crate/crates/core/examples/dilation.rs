//! Builds a unitary dilation from Kraus operators and reads them back.

use cp_phase::channels::{amplitude_damping, dilate, kraus_from_dilation};

fn main() -> cp_phase::Result<()> {
    let channel = amplitude_damping(0.36)?;
    let d = dilate(&channel)?;
    println!("dilation of amplitude_damping(0.36), {0}x{0}:", d.sys_dim() * d.env_dim());
    for row in d.unitary().to_rows() {
        let cells: Vec<String> = row.iter().map(|z| format!("{:+.3}{:+.3}i", z.re, z.im)).collect();
        println!("  {}", cells.join("  "));
    }
    println!("unitarity residual {:.3e}", d.unitary().unitarity_residual());
    let back = kraus_from_dilation(&d)?;
    println!("roundtrip residual {:.3e}", back.max_abs_diff(&channel));
    Ok(())
}
