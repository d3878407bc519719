//! Classify weighted exponent tuples and back each verdict with evidence.
//!
//! Run with `cargo run --release --example cowling_price`.

use uncertainty_lab::harness::cp_check;
use uncertainty_lab::params::cp_params;

fn main() -> uncertainty_lab::Result<()> {
    let cp = cp_params(3, 2.0, 2.0, 1.0, 1.0)?;
    println!(
        "d=3 p=q=2 theta=phi=1: delta={:.4} eps={:.4} a={:.4} b={:.4} r1={:.4} s1={:.4} C={:.4e}",
        cp.delta, cp.epsilon, cp.a, cp.b, cp.r1, cp.s1, cp.bound()
    );

    let tuples = [
        (1usize, 2.0, 2.0, 1.0, 1.0),
        (2, 4.0, 4.0, 0.5, 0.5),
        (2, 8.0, 8.0, 0.1, 0.1),
        (3, 3.0, 3.0, 1.0, 1.0),
    ];
    for (d, p, q, theta, phi) in tuples {
        let r = cp_check(d, p, q, theta, phi, 0)?;
        print!("(d={d}, p={p}, q={q}, theta={theta}, phi={phi}) -> {:?}, holds={}", r.class, r.inequality_holds);
        if let Some(f) = &r.feasible {
            let worst = f.trials.iter().map(|t| t.slack).fold(f64::INFINITY, f64::min);
            print!(", {} trials, worst slack {worst:.3e}", f.trials.len());
        }
        if let Some(v) = &r.violated {
            print!(", slope {:.4} from {}", v.slope, v.source);
        }
        if let Some(e) = &r.endpoint {
            print!(", tail masses {:?}, weighted mass {:.4}", e.tail_masses, e.weighted_mass);
        }
        println!();
    }
    Ok(())
}
