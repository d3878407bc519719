//! Numerical checks of Fourier uncertainty principles in ℝ^d.
//!
//! The crate reproduces, at desk scale, the mass-splitting proofs of the
//! Heisenberg inequality and of its L^p and weighted (Cowling–Price)
//! variants: the parameter choices, the certified constants and how they
//! grow with the dimension, the Gaussian values they are measured against,
//! and the explicit families showing where the inequalities stop holding.
//!
//! Transform convention throughout: `f̂(ξ) = ∫ f(x) e^{-2πi x·ξ} dx`, so
//! `e^{-π|x|²}` is its own transform.
//!
//! | module | contents |
//! |---|---|
//! | [`specialfn`] | log-Gamma, Stirling ratio, incomplete Gamma, `ω_{d-1}`, `v_d` |
//! | [`params`] | exponents, thresholds and certified constants |
//! | [`radial`] | radial integrals and norms, Gaussian closed forms |
//! | [`grid`] | sampled functions in `d <= 3` and their transforms |
//! | [`counterexamples`] | `g_c`, sign matrices and translate sums, endpoint integrals |
//! | [`harness`] | sweeps, chain checks, classification of weighted inequalities |
//! | [`cli`] | the `uncertainty-lab` command line |
//!
//! Runnable walkthroughs live in `examples/`:
//! `heisenberg_constant`, `lp_growth`, `supercritical_collapse`,
//! `grid_transform`, `function_chain`, `rudin_shapiro`, `cowling_price`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod counterexamples;
pub mod error;
pub mod fit;
pub mod grid;
pub mod harness;
pub mod params;
pub mod quad;
pub mod radial;
pub mod specialfn;

pub use error::{Error, Result};
