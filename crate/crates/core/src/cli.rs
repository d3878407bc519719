//! Command-line front end. Every subcommand runs one experiment and exits
//! with 0 when all checked inequalities hold, 1 when one fails, and 2 on a
//! usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::counterexamples::{
    alpha_exponent, bump_base, gc_infimum_sweep, h_bound, rs_family_sequence, rs_fourier_defect, rs_grid_spec,
    rs_growth_ratio,
};
use crate::error::{Error, Result};
use crate::grid::{grid_weighted_norm, sample, sample_radial, save_grid_csv, GridFunction, GridSpec, RandomBump};
use crate::harness::{cp_check, function_chain_check, heisenberg_sweep, lp_sweep, write_summary_json, write_sweep_csv, Sweep};
use crate::params::lp_regime;
use crate::radial::gaussian_uncertainty_product;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "uncertainty-lab", version, about = "Numerical checks of Fourier uncertainty principles")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Heisenberg in dimension d: the certified L² constant against d²·10⁻¹⁰
    /// and against the sharp Gaussian value d²/(16π²), for d = 1..d-max.
    Heisenberg {
        #[arg(long, default_value_t = 500)]
        d_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// L^p uncertainty for fixed 1 < p <= 2: the certified constant grows
    /// like d^p, as does the Gaussian product.
    Lp {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 500)]
        d_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// No L^p uncertainty above p = 2d/(d-1): the self-dual two-scale
    /// Gaussians g_c drive the product to zero as c grows.
    Sharpness {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        /// Comma-separated increasing scales, each at least 1.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32")]
        c_list: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Signed translate sums in d = 1 or 2: flat sup norm, L² mass 2^{dk},
    /// and growth 2^{k(d/2 - d/p - θ)} of the weighted-inequality ratio.
    RudinShapiro {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Directory receiving one grid CSV per member of the top level.
        #[arg(long)]
        export_dir: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// ‖|x|^θ f‖_p ‖|ξ|^φ f̂‖_q >= C‖f‖₂²: classify (d, p, q, θ, φ) as
    /// feasible, endpoint or violated, and check the evidence.
    CowlingPrice {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        phi: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// The Gaussian uncertainty product Γ((p+d)/2)²/Γ(d/2)²·(πp)^{-p};
    /// d²/(16π²) at p = 2.
    Gaussian {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// Every link of the mass-splitting argument on one sampled function.
    Chain {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = ChainFunction::Bump)]
        function: ChainFunction,
        /// Scale for `--function gc`.
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per axis; defaults depend on d.
        #[arg(long)]
        n: Option<usize>,
        /// Half width of the sampling cube; defaults depend on d.
        #[arg(long = "L")]
        half_width: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainFunction {
    Gaussian,
    Gc,
    Bump,
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&config) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Domain(_)
            | Error::Infeasible(_)
            | Error::Regime(_)
            | Error::Homogeneity { .. }
            | Error::Size(_)
            | Error::Admissibility { .. }
            | Error::Spacing(_)
            | Error::SupportOverflow(_)
    )
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn emit_sweep(sweep: &Sweep, output: &Output) -> Result<()> {
    let mut out = sink(&output.out)?;
    match output.format {
        Format::Csv => write_sweep_csv(&sweep.rows, &mut out)?,
        Format::Json => write_summary_json(&sweep.summary(), &mut out)?,
    }
    out.flush()?;
    if output.out.is_some() {
        println!("d0={:?} slope={:?} pass={}", sweep.d0, sweep.slope, sweep.pass);
    }
    Ok(())
}

fn write_table(header: &[&str], rows: &[Vec<String>], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn f(v: f64) -> String {
    format!("{v:.16e}")
}

/// Run one subcommand; `Ok(true)` when every checked inequality held.
pub fn dispatch(config: &RunConfig) -> Result<bool> {
    match &config.command {
        Command::Heisenberg { d_max, output } => {
            let sweep = heisenberg_sweep(*d_max)?;
            emit_sweep(&sweep, output)?;
            Ok(sweep.pass)
        }
        Command::Lp { p, d_max, output } => {
            let sweep = lp_sweep(*p, *d_max)?;
            emit_sweep(&sweep, output)?;
            Ok(sweep.pass)
        }
        Command::Sharpness { d, p, c_list, output } => sharpness(*d, *p, c_list, output),
        Command::RudinShapiro { d, p, theta, k_max, export_dir, output } => {
            rudin_shapiro(*d, *p, *theta, *k_max, export_dir.as_deref(), output)
        }
        Command::CowlingPrice { d, p, q, theta, phi, seed, output } => {
            let rep = cp_check(*d, *p, *q, *theta, *phi, *seed)?;
            let mut out = sink(&output.out)?;
            match output.format {
                Format::Json => write_json(&rep, &mut out)?,
                Format::Csv => {
                    let mut rows = vec![vec!["class".into(), format!("{:?}", rep.class).to_lowercase()]];
                    if let Some(fe) = &rep.feasible {
                        rows.push(vec!["log_bound".into(), f(fe.params.log_bound)]);
                        for t in &fe.trials {
                            rows.push(vec![format!("slack[{}]", t.function), f(t.slack)]);
                        }
                    }
                    if let Some(v) = &rep.violated {
                        rows.push(vec![format!("slope[{}]", v.source), f(v.slope)]);
                        rows.push(vec!["predicted_slope".into(), f(v.predicted_slope)]);
                    }
                    if let Some(e) = &rep.endpoint {
                        for (delta, m) in e.deltas.iter().zip(&e.tail_masses) {
                            rows.push(vec![format!("tail_mass[{delta:e}]"), f(*m)]);
                        }
                        rows.push(vec!["quadrature_error".into(), f(e.quadrature_error)]);
                        rows.push(vec!["weighted_mass".into(), f(e.weighted_mass)]);
                    }
                    rows.push(vec!["evidence_ok".into(), rep.pass.to_string()]);
                    write_table(&["quantity", "value"], &rows, &mut out)?;
                }
            }
            out.flush()?;
            Ok(rep.inequality_holds && rep.pass)
        }
        Command::Gaussian { d, p } => {
            let v = gaussian_uncertainty_product(*d, *p)?;
            if *p == 2.0 {
                println!("{v:.16e}  (= d^2/(16 pi^2) with d={d})");
            } else {
                println!("{v:.16e}");
            }
            Ok(true)
        }
        Command::Chain { d, p, function, c, seed, n, half_width, output } => {
            let g = chain_function(*d, *function, *c, *seed, *n, *half_width)?;
            let rep = function_chain_check(&g, *d, *p)?;
            let mut out = sink(&output.out)?;
            match output.format {
                Format::Json => write_json(&rep, &mut out)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = rep
                        .links
                        .iter()
                        .map(|l| vec![l.name.clone(), f(l.lhs), f(l.rhs), f(l.slack), l.pass.to_string()])
                        .collect();
                    write_table(&["link", "lhs", "rhs", "slack", "pass"], &rows, &mut out)?;
                }
            }
            out.flush()?;
            Ok(rep.pass)
        }
    }
}

fn chain_function(
    d: usize,
    function: ChainFunction,
    c: f64,
    seed: u64,
    n: Option<usize>,
    half_width: Option<f64>,
) -> Result<GridFunction> {
    let default = match function {
        // both scales of g_c must fit on the grid and be resolved
        ChainFunction::Gc => {
            let l = 8.0 * c.max(1.0 / c);
            let per_axis = [1024usize, 1024, 128][d.clamp(1, 3) - 1];
            GridSpec::new(d, per_axis, l)?
        }
        _ => GridSpec::default_for(d)?,
    };
    let spec = GridSpec::new(d, n.unwrap_or(default.n()), half_width.unwrap_or(default.half_width()))?;
    match function {
        ChainFunction::Gaussian => sample_radial(|r| (-std::f64::consts::PI * r * r).exp(), spec),
        ChainFunction::Gc => {
            let g = crate::counterexamples::gc_profile(c, d)?;
            sample_radial(|r| g.value(r), spec)
        }
        ChainFunction::Bump => {
            let b = RandomBump::new(d, seed)?;
            sample(|x| b.value(x), spec)
        }
    }
}

fn sharpness(d: usize, p: f64, c_list: &[f64], output: &Output) -> Result<bool> {
    lp_regime(d, p)?;
    let products = gc_infimum_sweep(d, p, c_list)?;
    let alpha = alpha_exponent(d, p)?;
    let decreasing = products.windows(2).all(|w| w[1] < w[0]);
    let collapsed = match (products.first(), products.last()) {
        (Some(a), Some(b)) if c_list.last().is_some_and(|&c| c >= 32.0) => b / a < 0.1,
        _ => true,
    };
    let mut out = sink(&output.out)?;
    match output.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = c_list
                .iter()
                .zip(&products)
                .map(|(&c, &v)| Ok(vec![f(c), f(v), f(h_bound(c, d, p)?.powi(2))]))
                .collect::<Result<_>>()?;
            write_table(&["c", "product", "h_squared"], &rows, &mut out)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                d: usize,
                p: f64,
                alpha: f64,
                c: &'a [f64],
                products: &'a [f64],
                decreasing: bool,
                collapsed: bool,
            }
            write_json(&Report { d, p, alpha, c: c_list, products: &products, decreasing, collapsed }, &mut out)?;
        }
    }
    out.flush()?;
    Ok(decreasing && collapsed)
}

fn rudin_shapiro(d: usize, p: f64, theta: f64, k_max: usize, export: Option<&Path>, output: &Output) -> Result<bool> {
    if k_max < 3 {
        return Err(Error::Domain(format!("k-max must satisfy 3 <= k-max <= 4 for a slope fit, got {k_max}")));
    }
    let base = bump_base(rs_grid_spec(d, k_max)?)?;
    let levels = rs_family_sequence(&base, d, k_max)?;
    let growth = rs_growth_ratio(&levels[1..], p, theta)?;
    let mut rows = Vec::new();
    let mut invariants_ok = true;
    for fam in &levels {
        let l2 = grid_weighted_norm(&fam.members[0], 2.0, 0.0).powi(2);
        let want = 2f64.powi((d * fam.k) as i32) * fam.base_l2_sq;
        let l2_err = (l2 - want).abs() / want;
        let fourier = rs_fourier_defect(fam, &base)?;
        invariants_ok &= l2_err <= 1e-6 && fourier <= 1e-6;
        let ratio = growth.levels.iter().position(|&k| k == fam.k).map(|i| growth.ratios[i]);
        rows.push(vec![
            fam.k.to_string(),
            f(l2),
            f(want),
            f(fourier),
            ratio.map_or(String::new(), f),
        ]);
    }
    if let Some(dir) = export {
        std::fs::create_dir_all(dir)?;
        let top = levels.last().expect("at least one level");
        for (i, m) in top.members.iter().enumerate() {
            save_grid_csv(m, &dir.join(format!("member_{}_level_{}.csv", i + 1, top.k)))?;
        }
    }
    let slope_ok = if growth.predicted_slope.abs() < 1e-9 {
        growth.slope.abs() < 0.05
    } else {
        (growth.slope - growth.predicted_slope).abs() <= 0.1 * growth.predicted_slope.abs()
    };
    let mut out = sink(&output.out)?;
    match output.format {
        Format::Csv => write_table(&["k", "l2_sq", "expected_l2_sq", "fourier_defect", "growth_ratio"], &rows, &mut out)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                growth: &'a crate::counterexamples::RsGrowth,
                invariants_ok: bool,
                slope_ok: bool,
            }
            write_json(&Report { growth: &growth, invariants_ok, slope_ok }, &mut out)?;
        }
    }
    out.flush()?;
    if output.out.is_some() {
        println!("slope={:.4} predicted={:.4}", growth.slope, growth.predicted_slope);
    }
    Ok(invariants_ok && slope_ok)
}
