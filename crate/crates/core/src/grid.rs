//! Sampled functions on centered cubes `[-L, L)^d`, `d <= 3`, and a discrete
//! approximation of `f̂(ξ) = ∫ f(x) e^{-2πi x·ξ} dx`.
//!
//! Sample `k` on each axis sits at `-L + k h` with `h = 2L/n`. The transform
//! lands on the dual grid with spacing `1/(2L)` and half-width `n/(4L)`, so
//! that applying it twice maps the grid onto itself. With both grids centered,
//!
//! ```text
//! f̂_m = h (-1)^m e^{-iπn/2} Σ_k f_k (-1)^k e^{-2πi km/n}
//! ```
//!
//! per axis, which is an exact rewrite of the Riemann sum rather than a
//! reindexing trick.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::primary_up_admissible;

/// Relative tail mass above which a transform is refused.
pub const BOUNDARY_MASS_LIMIT: f64 = 1e-6;
/// Relative boundary amplitude above which a transform logs a warning.
pub const BOUNDARY_WARN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    d: usize,
    n: usize,
    half_width: f64,
}

impl GridSpec {
    pub fn new(d: usize, n: usize, half_width: f64) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::Domain(format!("grid dimension must be 1, 2 or 3, got {d}")));
        }
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::Domain(format!("samples per axis must be a power of two >= 16, got {n}")));
        }
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::Domain(format!("half width must be positive, got {half_width}")));
        }
        Ok(Self { d, n, half_width })
    }

    /// Resolution at which a unit Gaussian is below `1e-12` at the edge on
    /// both sides of the transform.
    pub fn default_for(d: usize) -> Result<Self> {
        match d {
            1 => Self::new(1, 256, 8.0),
            2 => Self::new(2, 128, 6.0),
            3 => Self::new(3, 64, 5.0),
            _ => Err(Error::Domain(format!("grid dimension must be 1, 2 or 3, got {d}"))),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The frequency grid: spacing `1/(2L)`, half-width `n/(4L)`.
    pub fn dual(&self) -> Self {
        Self { d: self.d, n: self.n, half_width: self.n as f64 / (4.0 * self.half_width) }
    }

    /// Per-axis indices of a flat row-major index (axis 0 varies slowest).
    pub fn multi_index(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0; 3];
        for axis in (0..self.d).rev() {
            idx[axis] = flat % self.n;
            flat /= self.n;
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx[..self.d].iter().fold(0, |acc, &k| acc * self.n + k)
    }

    pub fn axis_coordinate(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.spacing()
    }

    /// Coordinates of a flat index; unused trailing slots are zero.
    pub fn coordinate(&self, flat: usize) -> [f64; 3] {
        let idx = self.multi_index(flat);
        let mut x = [0.0; 3];
        for axis in 0..self.d {
            x[axis] = self.axis_coordinate(idx[axis]);
        }
        x
    }

    /// Whether the flat index lies on a face of the cube.
    pub fn on_boundary(&self, flat: usize) -> bool {
        let idx = self.multi_index(flat);
        idx[..self.d].iter().any(|&k| k == 0 || k == self.n - 1)
    }
}

/// Complex samples on a [`GridSpec`], stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::Domain(format!("expected {} samples, got {}", spec.len(), values.len())));
        }
        if let Some(k) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(format!("sample {k} is {}", values[k])));
        }
        Ok(Self { spec, values })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self { spec, values: vec![Complex64::new(0.0, 0.0); spec.len()] }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest `|f_k - g_k|` on a common grid.
    pub fn sup_distance(&self, other: &GridFunction) -> Result<f64> {
        if self.spec != other.spec {
            return Err(Error::Domain("grids differ".into()));
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { spec: self.spec, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Pointwise sum of functions sampled on the same grid.
    pub fn add(&self, other: &GridFunction) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::Domain("grids differ".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { spec: self.spec, values })
    }

    /// `|f|²` summed over the faces, relative to the total.
    pub fn boundary_mass(&self) -> f64 {
        let mut edge = 0.0;
        let mut total = 0.0;
        for (k, v) in self.values.iter().enumerate() {
            let m = v.norm_sqr();
            total += m;
            if self.spec.on_boundary(k) {
                edge += m;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            edge / total
        }
    }

    fn boundary_peak(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(k, _)| self.spec.on_boundary(*k))
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// `f(x - shift)`, for shifts that are whole numbers of cells. Samples
    /// moved in from outside the cube are zero; moving non-negligible mass
    /// out of the cube is an error.
    pub fn translate(&self, shift: &[f64]) -> Result<Self> {
        let h = self.spec.spacing();
        let d = self.spec.d;
        if shift.len() != d {
            return Err(Error::Domain(format!("shift has {} components, grid has d={d}", shift.len())));
        }
        let mut cells = [0i64; 3];
        for (axis, &s) in shift.iter().enumerate() {
            let c = (s / h).round();
            if (c * h - s).abs() > 1e-12 * h.max(s.abs()) {
                return Err(Error::Spacing(format!("shift {s} is not a multiple of the spacing {h}")));
            }
            cells[axis] = c as i64;
        }
        let tol = 1e-12 * self.sup_norm();
        let n = self.spec.n as i64;
        let mut out = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for (k, v) in self.values.iter().enumerate() {
            let idx = self.spec.multi_index(k);
            let mut dst = [0usize; 3];
            let mut inside = true;
            for axis in 0..d {
                let j = idx[axis] as i64 + cells[axis];
                if j < 0 || j >= n {
                    inside = false;
                    break;
                }
                dst[axis] = j as usize;
            }
            if inside {
                out[self.spec.flat_index(&dst)] = *v;
            } else if v.norm() > tol {
                return Err(Error::SupportOverflow(format!(
                    "translation by {shift:?} pushes a sample of size {:.3e} off the grid",
                    v.norm()
                )));
            }
        }
        Ok(Self { spec: self.spec, values: out })
    }

    /// Samples reflected through the origin, `k ↦ (n - k) mod n` per axis.
    pub fn reflect(&self) -> Self {
        let n = self.spec.n;
        let mut out = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for (k, v) in self.values.iter().enumerate() {
            let mut idx = self.spec.multi_index(k);
            for i in idx.iter_mut().take(self.spec.d) {
                *i = (n - *i) % n;
            }
            out[self.spec.flat_index(&idx)] = *v;
        }
        Self { spec: self.spec, values: out }
    }
}

/// Sample `generator` at every grid point.
pub fn sample<F: Fn(&[f64]) -> Complex64>(generator: F, spec: GridSpec) -> Result<GridFunction> {
    let values = (0..spec.len())
        .map(|k| {
            let x = spec.coordinate(k);
            generator(&x[..spec.d])
        })
        .collect();
    GridFunction::from_values(spec, values)
}

/// Sample a real radial function `F(|x|)`.
pub fn sample_radial<F: Fn(f64) -> f64>(profile: F, spec: GridSpec) -> Result<GridFunction> {
    sample(|x| Complex64::new(profile(x.iter().map(|c| c * c).sum::<f64>().sqrt()), 0.0), spec)
}

/// Continuous Fourier transform sampled on the dual grid.
pub fn fourier_transform(f: &GridFunction) -> Result<GridFunction> {
    let spec = f.spec;
    let peak = f.sup_norm();
    if peak > 0.0 {
        let rel = f.boundary_mass();
        if rel > BOUNDARY_MASS_LIMIT {
            return Err(Error::BoundaryMass { relative: rel, limit: BOUNDARY_MASS_LIMIT });
        }
        let edge = f.boundary_peak();
        if edge > BOUNDARY_WARN * peak {
            log::warn!(
                "boundary samples reach {:.3e} of the peak; transform accuracy is limited by truncation",
                edge / peak
            );
        }
    }

    let n = spec.n;
    let h = spec.spacing();
    let fft = FftPlanner::new().plan_fft_forward(n);
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let global = Complex64::from_polar(h, -PI * n as f64 / 2.0);

    let mut values = f.values.clone();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..spec.d {
        let stride = n.pow((spec.d - 1 - axis) as u32);
        let block = stride * n;
        for base in (0..values.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = values[start + k * stride] * sign(k);
                }
                fft.process(&mut line);
                for (m, v) in line.iter().enumerate() {
                    values[start + m * stride] = v * global * sign(m);
                }
            }
        }
    }
    GridFunction::from_values(spec.dual(), values)
}

/// Riemann-sum weighted norm `(Σ |x_k|^{pw} |f_k|^p h^d)^{1/p}`; with
/// `p = ∞` the weighted sup norm.
pub fn grid_weighted_norm(f: &GridFunction, p: f64, weight_exponent: f64) -> f64 {
    let spec = f.spec;
    let radius = |k: usize| spec.coordinate(k).iter().map(|c| c * c).sum::<f64>().sqrt();
    let weight = |k: usize| {
        if weight_exponent == 0.0 {
            1.0
        } else {
            radius(k).powf(weight_exponent)
        }
    };
    if p.is_infinite() {
        return f.values.iter().enumerate().map(|(k, v)| weight(k) * v.norm()).fold(0.0, f64::max);
    }
    let cell = spec.spacing().powi(spec.d as i32);
    let sum: f64 = f.values.iter().enumerate().map(|(k, v)| (weight(k) * v.norm()).powf(p)).sum();
    (sum * cell).powf(1.0 / p)
}

/// `|‖f‖₂ - ‖f̂‖₂| / ‖f‖₂`.
pub fn plancherel_defect(f: &GridFunction) -> Result<f64> {
    let fhat = fourier_transform(f)?;
    plancherel_defect_with(f, &fhat)
}

/// Same as [`plancherel_defect`] with the transform already in hand.
pub fn plancherel_defect_with(f: &GridFunction, fhat: &GridFunction) -> Result<f64> {
    let a = grid_weighted_norm(f, 2.0, 0.0);
    if a == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok((a - grid_weighted_norm(fhat, 2.0, 0.0)).abs() / a)
}

/// `‖f‖_a ‖f̂‖_a / (‖f‖_p ‖f̂‖_p)`, at least 1 for admissible `(a, p)`.
pub fn primary_up_defect(f: &GridFunction, a: f64, p: f64) -> Result<f64> {
    if !primary_up_admissible(a, p) {
        return Err(Error::Admissibility { a, p });
    }
    let fhat = fourier_transform(f)?;
    primary_up_quotient(f, &fhat, a, p)
}

/// Same as [`primary_up_defect`] with the transform already in hand.
pub fn primary_up_quotient(f: &GridFunction, fhat: &GridFunction, a: f64, p: f64) -> Result<f64> {
    if !primary_up_admissible(a, p) {
        return Err(Error::Admissibility { a, p });
    }
    let den = grid_weighted_norm(f, p, 0.0) * grid_weighted_norm(fhat, p, 0.0);
    if den == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(grid_weighted_norm(f, a, 0.0) * grid_weighted_norm(fhat, a, 0.0) / den)
}

/// A random sum of three complex-weighted Gaussians
/// `Σ c_j exp(-π|x - μ_j|²/σ_j²)`, centers in `[-1, 1]^d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomBump {
    pub d: usize,
    pub centers: Vec<Vec<f64>>,
    pub widths: Vec<f64>,
    pub coefs: Vec<(f64, f64)>,
}

impl RandomBump {
    pub fn new(d: usize, seed: u64) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::Domain(format!("random bumps live on grids, d must be 1..=3, got {d}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // narrower width range in d=3, where the default grid is coarsest
        let (lo, hi) = if d == 3 { (0.8, 1.2) } else { (0.6, 1.4) };
        let mut bump = RandomBump { d, centers: Vec::new(), widths: Vec::new(), coefs: Vec::new() };
        for _ in 0..3 {
            bump.centers.push((0..d).map(|_| rng.gen_range(-1.0..=1.0)).collect());
            bump.widths.push(rng.gen_range(lo..=hi));
            bump.coefs.push((rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)));
        }
        Ok(bump)
    }

    pub fn value(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((mu, sigma), (re, im)) in self.centers.iter().zip(&self.widths).zip(&self.coefs) {
            let r2: f64 = x.iter().zip(mu).map(|(a, b)| (a - b) * (a - b)).sum();
            acc += Complex64::new(*re, *im) * (-PI * r2 / (sigma * sigma)).exp();
        }
        acc
    }

    /// Exact transform `Σ c_j σ_j^d e^{-2πi μ_j·ξ} e^{-π σ_j² |ξ|²}`.
    pub fn transform_value(&self, xi: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((mu, sigma), (re, im)) in self.centers.iter().zip(&self.widths).zip(&self.coefs) {
            let xi2: f64 = xi.iter().map(|v| v * v).sum();
            let dot: f64 = xi.iter().zip(mu).map(|(a, b)| a * b).sum();
            let amp = sigma.powi(self.d as i32) * (-PI * sigma * sigma * xi2).exp();
            acc += Complex64::new(*re, *im) * Complex64::from_polar(amp, -2.0 * PI * dot);
        }
        acc
    }
}

/// A [`RandomBump`] sampled on the default grid for its dimension.
pub fn random_bump(d: usize, seed: u64) -> Result<GridFunction> {
    let bump = RandomBump::new(d, seed)?;
    sample(|x| bump.value(x), GridSpec::default_for(d)?)
}

/// Write samples as `index,re,im` rows after a `# grid d=.. n=.. half_width=..` line.
pub fn write_grid_csv<W: Write>(f: &GridFunction, mut out: W) -> Result<()> {
    let s = f.spec;
    writeln!(out, "# grid d={} n={} half_width={:.16e}", s.d, s.n, s.half_width)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "re", "im"])?;
    for (k, v) in f.values.iter().enumerate() {
        w.write_record([k.to_string(), format!("{:.16e}", v.re), format!("{:.16e}", v.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_grid_csv<R: std::io::Read>(input: R) -> Result<GridFunction> {
    let mut reader = BufReader::new(input);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let spec = parse_grid_header(header.trim())?;
    let mut values = vec![Complex64::new(0.0, 0.0); spec.len()];
    let mut seen = vec![false; spec.len()];
    let mut rows = csv::Reader::from_reader(reader);
    for rec in rows.records() {
        let rec = rec?;
        let field = |i: usize| -> Result<&str> {
            rec.get(i).ok_or_else(|| Error::Format(format!("row has {} fields, expected 3", rec.len())))
        };
        let k: usize = field(0)?.trim().parse().map_err(|_| Error::Format(format!("bad index {:?}", &rec[0])))?;
        let re: f64 = field(1)?.trim().parse().map_err(|_| Error::Format(format!("bad real part {:?}", &rec[1])))?;
        let im: f64 = field(2)?.trim().parse().map_err(|_| Error::Format(format!("bad imaginary part {:?}", &rec[2])))?;
        if k >= spec.len() || seen[k] {
            return Err(Error::Format(format!("index {k} out of range or repeated")));
        }
        seen[k] = true;
        values[k] = Complex64::new(re, im);
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::Format(format!("missing sample {k}")));
    }
    GridFunction::from_values(spec, values)
}

fn parse_grid_header(line: &str) -> Result<GridSpec> {
    let rest = line
        .strip_prefix("# grid")
        .ok_or_else(|| Error::Format(format!("expected '# grid ...' header, got {line:?}")))?;
    let (mut d, mut n, mut l) = (None, None, None);
    for part in rest.split_whitespace() {
        let (key, val) = part.split_once('=').ok_or_else(|| Error::Format(format!("bad header field {part:?}")))?;
        let bad = || Error::Format(format!("bad header value {part:?}"));
        match key {
            "d" => d = Some(val.parse::<usize>().map_err(|_| bad())?),
            "n" => n = Some(val.parse::<usize>().map_err(|_| bad())?),
            "half_width" => l = Some(val.parse::<f64>().map_err(|_| bad())?),
            _ => return Err(Error::Format(format!("unknown header field {key:?}"))),
        }
    }
    match (d, n, l) {
        (Some(d), Some(n), Some(l)) => GridSpec::new(d, n, l),
        _ => Err(Error::Format(format!("header must give d, n and half_width: {line:?}"))),
    }
}

pub fn save_grid_csv(f: &GridFunction, path: &Path) -> Result<()> {
    write_grid_csv(f, std::io::BufWriter::new(File::create(path)?))
}

pub fn load_grid_csv(path: &Path) -> Result<GridFunction> {
    read_grid_csv(File::open(path)?)
}
