//! The sign matrix and the recursive construction that breaks the weighted
//! inequality below the endpoint.
//!
//! Run with `cargo run --release --example rudin_shapiro`.

use num_complex::Complex64;
use uncertainty_lab::counterexamples::{
    bump_base, rs_family_sequence, rs_fourier_defect, rs_grid_spec, rs_growth_ratio, sign_matrix,
};
use uncertainty_lab::grid::grid_weighted_norm;

fn main() -> uncertainty_lab::Result<()> {
    let s = sign_matrix(2)?;
    for i in 0..s.size() {
        println!("{:?}", s.row(i));
    }
    let a: Vec<Complex64> = (0..4).map(|j| Complex64::new(j as f64, 1.0 - j as f64)).collect();
    println!("parallelogram defect on one vector: {:.1e}", s.parallelogram_defect(&a));

    let (d, k_max) = (2usize, 4usize);
    let base = bump_base(rs_grid_spec(d, k_max)?)?;
    let families = rs_family_sequence(&base, d, k_max)?;
    for fam in &families {
        let l2 = grid_weighted_norm(&fam.members[0], 2.0, 0.0).powi(2);
        println!(
            "k={}: |f_1k|^2 / (4^k |f|^2) = {:.12}, fourier defect {:.2e}",
            fam.k,
            l2 / (4f64.powi(fam.k as i32) * fam.base_l2_sq),
            rs_fourier_defect(fam, &base)?
        );
    }
    let growth = rs_growth_ratio(&families[1..], 8.0, 0.1)?;
    println!("growth slope {:.4} (reduced schedule {:.4})", growth.slope, growth.predicted_slope);
    Ok(())
}
