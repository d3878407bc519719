use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::ols_slope;
use crate::grid::{fourier_transform, grid_weighted_norm, sample, GridFunction, GridSpec};

/// Grid spacing for the translate sums; integers and powers of two are
/// whole numbers of cells.
pub const RS_SPACING: f64 = 1.0 / 16.0;

const MAX_SIGN_DIM: usize = 12;
const MAX_LEVEL: usize = 4;

/// A `2^d × 2^d` matrix of signs with orthogonal rows and a first column of
/// `+1`, so that `Σ_i |Σ_j ε_ij a_j|² = 2^d Σ_j |a_j|²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignMatrix {
    d: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        1 << self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.size() + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        let m = self.size();
        &self.entries[i * m..(i + 1) * m]
    }

    /// `(Σ_j ε_ij a_j)_i`.
    pub fn apply(&self, a: &[Complex64]) -> Vec<Complex64> {
        (0..self.size())
            .map(|i| self.row(i).iter().zip(a).map(|(&e, v)| v * e as f64).sum())
            .collect()
    }

    /// `|Σ_i |(Ea)_i|² - 2^d Σ_j |a_j|²| / (2^d Σ_j |a_j|²)`.
    pub fn parallelogram_defect(&self, a: &[Complex64]) -> f64 {
        let lhs: f64 = self.apply(a).iter().map(|v| v.norm_sqr()).sum();
        let rhs = self.size() as f64 * a.iter().map(|v| v.norm_sqr()).sum::<f64>();
        if rhs == 0.0 {
            lhs
        } else {
            (lhs - rhs).abs() / rhs
        }
    }
}

/// Signs built by doubling: every row `s` spawns `(s, s)` and `(s, -s)`.
pub fn sign_matrix(d: usize) -> Result<SignMatrix> {
    if d == 0 || d > MAX_SIGN_DIM {
        return Err(Error::Size(format!("sign matrices are built for 1 <= d <= {MAX_SIGN_DIM}, got {d}")));
    }
    let mut entries = vec![1i8];
    let mut m = 1;
    for _ in 0..d {
        let mut next = vec![0i8; 4 * m * m];
        for i in 0..m {
            for j in 0..m {
                let e = entries[i * m + j];
                next[i * 2 * m + j] = e;
                next[i * 2 * m + j + m] = e;
                next[(i + m) * 2 * m + j] = e;
                next[(i + m) * 2 * m + j + m] = -e;
            }
        }
        entries = next;
        m *= 2;
    }
    Ok(SignMatrix { d, entries })
}

/// Members `f_{1,k}, …, f_{2^d,k}` of one level of the construction.
#[derive(Debug, Clone)]
pub struct RSFamily {
    pub d: usize,
    pub k: usize,
    pub members: Vec<GridFunction>,
    /// `‖f‖₂²` of the level-0 bump.
    pub base_l2_sq: f64,
}

/// Grid with spacing [`RS_SPACING`] large enough for levels up to `k_max`.
pub fn rs_grid_spec(d: usize, k_max: usize) -> Result<GridSpec> {
    let half_width = (1usize << k_max).max(1) as f64;
    let n = (2.0 * half_width / RS_SPACING) as usize;
    GridSpec::new(d, n.max(16), half_width)
}

fn poly_bump(t: f64) -> f64 {
    if t <= 0.1 || t >= 0.9 {
        return 0.0;
    }
    let s = 2.0 * (t - 0.1) / 0.8 - 1.0;
    (1.0 - s * s).powi(4)
}

/// Tensor product of `(1 - (2s-1)²)^4` rescaled to `[1/10, 9/10]`, peak 1.
pub fn bump_base(spec: GridSpec) -> Result<GridFunction> {
    sample(|x| Complex64::new(x.iter().map(|&t| poly_bump(t)).product(), 0.0), spec)
}

fn check_base(base: &GridFunction, d: usize, k_max: usize) -> Result<()> {
    let spec = base.spec();
    if !(1..=2).contains(&d) || spec.d() != d {
        return Err(Error::Domain(format!("translate sums are built on grids with d = 1 or 2, got d={d} on a d={} grid", spec.d())));
    }
    if k_max > MAX_LEVEL {
        return Err(Error::Size(format!("level must be at most {MAX_LEVEL}, got {k_max}")));
    }
    let cells_per_unit = 1.0 / spec.spacing();
    if (cells_per_unit - cells_per_unit.round()).abs() > 1e-9 {
        return Err(Error::Spacing(format!("spacing {} does not divide 1", spec.spacing())));
    }
    let reach = (1usize << k_max) as f64;
    if spec.half_width() < reach {
        return Err(Error::SupportOverflow(format!(
            "grid half width {} cannot hold [0, {reach}]^{d}",
            spec.half_width()
        )));
    }
    let tol = 1e-12 * base.sup_norm();
    for (i, v) in base.values().iter().enumerate() {
        let x = spec.coordinate(i);
        if x[..d].iter().any(|&t| !(0.0..=1.0).contains(&t)) && v.norm() > tol {
            return Err(Error::SupportOverflow(format!("base bump is not supported in [0, 1]^{d}")));
        }
    }
    Ok(())
}

/// All levels `0..=k_max` of the construction, each member of level `k+1`
/// being `Σ_j ε_ij f_{j,k}(x - x_j)` with `x_j` having coordinate `2^k`
/// exactly on the axes where bit `b` of `j` is set.
pub fn rs_family_sequence(base: &GridFunction, d: usize, k_max: usize) -> Result<Vec<RSFamily>> {
    check_base(base, d, k_max)?;
    let signs = sign_matrix(d)?;
    let m = signs.size();
    let base_l2_sq = grid_weighted_norm(base, 2.0, 0.0).powi(2);
    let mut levels = vec![RSFamily { d, k: 0, members: vec![base.clone(); m], base_l2_sq }];
    for k in 0..k_max {
        let step = (1usize << k) as f64;
        let prev = &levels[k].members;
        let shifted: Vec<GridFunction> = (0..m)
            .map(|j| {
                let shift: Vec<f64> = (0..d).map(|b| if j >> b & 1 == 1 { step } else { 0.0 }).collect();
                prev[j].translate(&shift)
            })
            .collect::<Result<_>>()?;
        let members = (0..m)
            .map(|i| {
                let mut acc = GridFunction::zeros(*base.spec());
                for (j, g) in shifted.iter().enumerate() {
                    acc = acc.add(&g.scale(signs.entry(i, j) as f64))?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        levels.push(RSFamily { d, k: k + 1, members, base_l2_sq });
    }
    Ok(levels)
}

/// Level `k` of the construction started from `base`.
pub fn rs_level(base: &GridFunction, d: usize, k: usize) -> Result<RSFamily> {
    let mut seq = rs_family_sequence(base, d, k)?;
    Ok(seq.pop().expect("sequence holds level 0..=k"))
}

/// `max_ξ |Σ_i |f̂_{i,k}(ξ)|² - 2^{d(k+1)} |f̂(ξ)|²|`, relative to the peak of
/// `2^{d(k+1)} |f̂|²`.
pub fn rs_fourier_defect(family: &RSFamily, base: &GridFunction) -> Result<f64> {
    let base_hat = fourier_transform(base)?;
    let hats: Vec<GridFunction> = family.members.iter().map(fourier_transform).collect::<Result<_>>()?;
    let factor = 2f64.powi((family.d * (family.k + 1)) as i32);
    let mut worst = 0.0f64;
    let mut peak = 0.0f64;
    for (idx, b) in base_hat.values().iter().enumerate() {
        let lhs: f64 = hats.iter().map(|h| h.values()[idx].norm_sqr()).sum();
        let rhs = factor * b.norm_sqr();
        worst = worst.max((lhs - rhs).abs());
        peak = peak.max(rhs);
    }
    Ok(worst / peak)
}

/// Per-level ratios and their fitted base-2 slope.
#[derive(Debug, Clone, Serialize)]
pub struct RsGrowth {
    pub levels: Vec<usize>,
    pub ratios: Vec<f64>,
    pub slope: f64,
    /// `d/2 - d/p - θ`, the slope of the reduced scalar schedule.
    pub predicted_slope: f64,
}

/// `G_k = ‖f_{1,k}‖₂² / (‖|x|^θ f_{1,k}‖_p · 2^{d(k+1)/2})`.
///
/// The Fourier factor `‖|ξ|^φ f̂_{1,k}‖_q` is replaced by its bound
/// `C·2^{d(k+1)/2}`, which is exactly what the level-by-level argument
/// controls; `G_k` then grows like `2^{k(d/2 - d/p - θ)}`.
pub fn rs_growth_ratio(families: &[RSFamily], p: f64, theta: f64) -> Result<RsGrowth> {
    if families.len() < 3 {
        return Err(Error::InsufficientLevels { needed: 3, got: families.len() });
    }
    if !(p > 1.0) || !(theta >= 0.0) {
        return Err(Error::Domain(format!("need p > 1 and theta >= 0, got p={p}, theta={theta}")));
    }
    let d = families[0].d;
    if families.iter().any(|f| f.d != d || f.base_l2_sq != families[0].base_l2_sq) {
        return Err(Error::Domain("families must share their base and dimension".into()));
    }
    let mut levels = Vec::new();
    let mut ratios = Vec::new();
    for fam in families {
        let f = &fam.members[0];
        let l2_sq = grid_weighted_norm(f, 2.0, 0.0).powi(2);
        let weighted = grid_weighted_norm(f, p, theta);
        let fourier_proxy = 2f64.powf(0.5 * (d * (fam.k + 1)) as f64);
        levels.push(fam.k);
        ratios.push(l2_sq / (weighted * fourier_proxy));
    }
    let xs: Vec<f64> = levels.iter().map(|&k| k as f64).collect();
    let ys: Vec<f64> = ratios.iter().map(|r| r.log2()).collect();
    let df = d as f64;
    Ok(RsGrowth { slope: ols_slope(&xs, &ys)?, predicted_slope: df / 2.0 - df / p - theta, levels, ratios })
}
