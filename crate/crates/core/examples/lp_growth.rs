//! Growth of the L^p constant like `d^p` for `1 < p <= 2`.
//!
//! Run with `cargo run --release --example lp_growth`.

use uncertainty_lab::harness::lp_sweep;
use uncertainty_lab::params::lp_params;

fn main() -> uncertainty_lab::Result<()> {
    let pr = lp_params(3, 1.5)?;
    println!("d=3 p=1.5: eps={} a={:.6} r={:.6} s={:.6} bound={:.6e}", pr.epsilon, pr.a, pr.r, pr.s, pr.bound());

    for p in [1.25, 1.5, 1.75, 2.0] {
        let sweep = lp_sweep(p, 500)?;
        println!(
            "p={p:<5} method slope={:.4} gaussian slope={:.4} d0={:?} pass={}",
            sweep.slope.unwrap_or(f64::NAN),
            sweep.gaussian_slope.unwrap_or(f64::NAN),
            sweep.d0,
            sweep.pass
        );
    }
    Ok(())
}
