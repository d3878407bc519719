//! The L² constant in low and high dimension, next to the sharp Gaussian value.
//!
//! Run with `cargo run --example heisenberg_constant`.

use uncertainty_lab::harness::heisenberg_sweep;
use uncertainty_lab::params::l2_params;
use uncertainty_lab::radial::gaussian_uncertainty_product;

fn main() -> uncertainty_lab::Result<()> {
    let one = l2_params(1)?;
    println!("d=1: a={} r={} s={} c_1={} bound={} (1/bound = {})", one.a, one.r, one.s, one.c_d(), one.bound(), 1.0 / one.bound());

    println!("{:>5} {:>14} {:>14} {:>10}", "d", "bound", "d^2/(16 pi^2)", "ratio");
    for d in [1usize, 2, 3, 10, 50, 200] {
        let bound = l2_params(d)?.bound();
        let sharp = gaussian_uncertainty_product(d, 2.0)?;
        println!("{d:>5} {bound:>14.6e} {sharp:>14.6e} {:>10.3e}", bound / sharp);
    }

    let sweep = heisenberg_sweep(500)?;
    println!("d0={:?} slope={:.4} pass={}", sweep.d0, sweep.slope.unwrap_or(f64::NAN), sweep.pass);
    Ok(())
}
