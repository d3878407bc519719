//! The sampled Fourier transform: self-duality of the Gaussian, Plancherel,
//! Hausdorff–Young and the primary principle on random bumps, and the CSV
//! round trip.
//!
//! Run with `cargo run --release --example grid_transform`.

use num_complex::Complex64;
use uncertainty_lab::grid::{
    fourier_transform, grid_weighted_norm, plancherel_defect, primary_up_defect, random_bump, read_grid_csv,
    sample_radial, write_grid_csv, GridSpec,
};

fn main() -> uncertainty_lab::Result<()> {
    let spec = GridSpec::new(1, 256, 8.0)?;
    let g = sample_radial(|r| (-std::f64::consts::PI * r * r).exp(), spec)?;
    let ghat = fourier_transform(&g)?;
    println!("gaussian: |ghat - g|_inf = {:.3e} on a dual grid of half-width {}", ghat.sup_distance(&g)?, ghat.spec().half_width());

    for seed in 0..5 {
        let f = random_bump(2, seed)?;
        let fhat = fourier_transform(&f)?;
        let (a, ap) = (1.5, 3.0);
        let hy = grid_weighted_norm(&fhat, ap, 0.0) / grid_weighted_norm(&f, a, 0.0);
        println!(
            "bump {seed}: plancherel defect {:.2e}, |fhat|_3/|f|_1.5 = {hy:.4}, primary quotient (a=1.5, p=3) {:.4}",
            plancherel_defect(&f)?,
            primary_up_defect(&f, a, ap)?
        );
    }

    let f = random_bump(1, 7)?;
    let mut buf = Vec::new();
    write_grid_csv(&f, &mut buf)?;
    let back = read_grid_csv(buf.as_slice())?;
    let same = back.values().iter().zip(f.values()).all(|(x, y): (&Complex64, &Complex64)| x == y);
    println!("csv round trip exact: {same} ({} bytes)", buf.len());
    Ok(())
}
