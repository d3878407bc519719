//! Every link of the mass-splitting argument, evaluated on sampled functions.
//!
//! Run with `cargo run --release --example function_chain`.

use uncertainty_lab::counterexamples::gc_profile;
use uncertainty_lab::grid::{random_bump, sample_radial, GridFunction, GridSpec};
use uncertainty_lab::harness::function_chain_check;

fn show(label: &str, f: &GridFunction, d: usize, p: f64) -> uncertainty_lab::Result<()> {
    let report = function_chain_check(f, d, p)?;
    println!("{label} (d={d}, p={p}): threshold T={:.4}, pass={}", report.threshold, report.pass);
    for link in &report.links {
        println!("  {:<28} {:>12.5e} >= {:<12.5e} slack {:+.3e}", link.name, link.lhs, link.rhs, link.slack);
    }
    Ok(())
}

fn main() -> uncertainty_lab::Result<()> {
    let gauss = sample_radial(|r| (-std::f64::consts::PI * r * r).exp(), GridSpec::new(1, 256, 8.0)?)?;
    show("gaussian", &gauss, 1, 2.0)?;

    let g4 = gc_profile(4.0, 2)?;
    let gc = sample_radial(|r| g4.value(r), GridSpec::new(2, 256, 16.0)?)?;
    show("g_4", &gc, 2, 2.0)?;

    show("random bump", &random_bump(2, 3)?, 2, 1.5)?;
    Ok(())
}
