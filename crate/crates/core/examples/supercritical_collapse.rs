//! Above `p = 2d/(d-1)` the self-dual family `g_c` drives the uncertainty
//! product to zero, so no constant exists.
//!
//! Run with `cargo run --example supercritical_collapse`.

use uncertainty_lab::counterexamples::{alpha_exponent, gc_infimum_sweep, h_bound};
use uncertainty_lab::params::{critical_exponent, lp_regime};

fn main() -> uncertainty_lab::Result<()> {
    let cs = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
    for (d, p) in [(2usize, 5.0), (3, 4.0), (4, 3.0)] {
        println!(
            "d={d} p={p}: critical exponent {} regime {:?} alpha {:.4}",
            critical_exponent(d),
            lp_regime(d, p)?,
            alpha_exponent(d, p)?
        );
        let products = gc_infimum_sweep(d, p, &cs)?;
        for (c, v) in cs.iter().zip(&products) {
            println!("  c={c:<4} product={v:.6e} h(c)^2={:.6e}", h_bound(*c, d, p)?.powi(2));
        }
        println!("  final/first = {:.3e}", products[products.len() - 1] / products[0]);
    }
    Ok(())
}
