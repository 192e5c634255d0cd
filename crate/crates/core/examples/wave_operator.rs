//! The wave operator on a Gaussian packet: round trip, intertwining and the
//! commutator with the collision operator.

use num_complex::Complex64;
use vpfp::spectral::XiGrid;
use vpfp::wave::{apply_inverse_wave, apply_wave, commutator_fp, intertwining_residual, WaveOperatorHandle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = XiGrid::default_resolution();
    let f: Vec<Complex64> = grid
        .v_nodes()
        .iter()
        .map(|&v| Complex64::from_polar((-(v - 0.4) * (v - 0.4) / 3.38).exp(), 0.7 * v))
        .collect();
    println!(" k  round trip   intertwining  ||[D, L] f||");
    for k in 1..=4 {
        let h = WaveOperatorHandle::maxwellian(k, grid)?;
        let back = apply_inverse_wave(&h, &apply_wave(&h, &f)?)?;
        let trip = back.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let comm = grid.v_norm(&commutator_fp(&h, &f)?);
        println!("{k:2}  {trip:.3e}   {:.3e}     {comm:.3e}", intertwining_residual(&h, &f)?);
    }
    Ok(())
}
