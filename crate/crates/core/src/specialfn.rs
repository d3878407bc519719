//! Log-domain Gamma machinery and the unit-sphere / unit-ball constants.
//!
//! Everything here works with logarithms: `Γ(x)` itself overflows an `f64`
//! near `x = 171`, while the sweeps in this crate need Gamma quotients at
//! `d/2` for `d` in the thousands.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// Below this argument the Stirling series is not used directly; the
/// argument is first shifted up with the recurrence `Γ(x+1) = xΓ(x)`.
const STIRLING_CUTOFF: f64 = 10.0;

/// `B_{2k} / (2k(2k-1))` for k = 1..8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Tail of the Stirling series, `ln Γ(x) - [(x-1/2) ln x - x + ln √(2π)]`.
/// Accurate to well below one ulp of the result for `x >= 10`.
fn stirling_remainder(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for c in STIRLING_COEFFS.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}

/// Number of unit shifts needed to bring `x` above the Stirling cutoff, and
/// the log of the product `x (x+1) ... (x+n-1)` that the shift divides out.
fn shift_up(x: f64) -> (f64, f64) {
    if x >= STIRLING_CUTOFF {
        return (0.0, 0.0);
    }
    let n = (STIRLING_CUTOFF - x).ceil();
    let mut prod = 1.0;
    let mut k = 0.0;
    while k < n {
        prod *= x + k;
        k += 1.0;
    }
    (n, prod.ln())
}

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires finite x > 0, got {x}")));
    }
    let (n, log_prod) = shift_up(x);
    let y = x + n;
    Ok((y - 0.5) * y.ln() - y + LN_SQRT_2PI + stirling_remainder(y) - log_prod)
}

/// `ln Γ(a) - ln Γ(b)` for `a, b > 0`.
///
/// Evaluated so that the large `(x - 1/2) ln x` terms cancel analytically
/// instead of in floating point, which keeps quotients such as
/// `Γ((p+d)/2) / Γ(d/2)` accurate to a few ulp at large `d`.
pub fn log_gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma_ratio requires finite positive arguments, got ({a}, {b})"
        )));
    }
    let lo = a.min(b);
    let (n, _) = shift_up(lo);
    let (_, log_prod_a) = shift_n(a, n);
    let (_, log_prod_b) = shift_n(b, n);
    let (big_a, big_b) = (a + n, b + n);
    let diff = a - b;
    let main = (big_a - 0.5) * (diff / big_b).ln_1p() + diff * (big_b.ln() - 1.0);
    Ok(main + stirling_remainder(big_a) - stirling_remainder(big_b) - log_prod_a + log_prod_b)
}

fn shift_n(x: f64, n: f64) -> (f64, f64) {
    let mut prod = 1.0;
    let mut k = 0.0;
    while k < n {
        prod *= x + k;
        k += 1.0;
    }
    (n, prod.ln())
}

/// `Γ(x) / [√(2π/x) (x/e)^x]` for `x >= 1`.
///
/// Decreases monotonically towards 1; at `x = 1` it equals `e/√(2π)`.
pub fn stirling_ratio(x: f64) -> Result<f64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("stirling_ratio requires x >= 1, got {x}")));
    }
    let (n, log_prod) = shift_up(x);
    if n == 0.0 {
        return Ok(stirling_remainder(x).exp());
    }
    let y = x + n;
    // base(y) - base(x) where base(t) = (t - 1/2) ln t - t
    let base_shift = (y - 0.5) * y.ln() - (x - 0.5) * x.ln() - n;
    Ok((base_shift + stirling_remainder(y) - log_prod).exp())
}

/// Regularized lower incomplete Gamma function `P(a, x) = γ(a, x) / Γ(a)`.
pub fn gamma_p(a: f64, x: f64) -> Result<f64> {
    let (p, _) = gamma_pq(a, x)?;
    Ok(p)
}

/// Regularized upper incomplete Gamma function `Q(a, x) = 1 - P(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> Result<f64> {
    let (_, q) = gamma_pq(a, x)?;
    Ok(q)
}

/// Both regularized incomplete Gamma functions, each computed on the side
/// where it does not suffer cancellation.
pub fn gamma_pq(a: f64, x: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !(x >= 0.0) || x.is_nan() {
        return Err(Error::Domain(format!("incomplete gamma requires a > 0, x >= 0, got ({a}, {x})")));
    }
    if x == 0.0 {
        return Ok((0.0, 1.0));
    }
    if x.is_infinite() {
        return Ok((1.0, 0.0));
    }
    let log_prefactor = a * x.ln() - x - log_gamma(a)?;
    if x < a + 1.0 {
        let p = lower_series(a, x, log_prefactor);
        Ok((p, 1.0 - p))
    } else {
        let q = upper_continued_fraction(a, x, log_prefactor);
        Ok((1.0 - q, q))
    }
}

fn lower_series(a: f64, x: f64, log_prefactor: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..10_000 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * f64::EPSILON * 0.25 {
            break;
        }
    }
    sum * log_prefactor.exp()
}

// Modified Lentz evaluation of the Legendre continued fraction for Q(a, x).
fn upper_continued_fraction(a: f64, x: f64, log_prefactor: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < f64::EPSILON * 0.25 {
            break;
        }
    }
    log_prefactor.exp() * h
}

/// Logarithms of the surface area of `S^{d-1}` and the volume of the unit
/// ball in `R^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionConstants {
    pub d: usize,
    /// `ln ω_{d-1}`, where `ω_{d-1} = 2π^{d/2} / Γ(d/2)`.
    pub log_sphere_area: f64,
    /// `ln v_d`, where `v_d = π^{d/2} / Γ(d/2 + 1)`.
    pub log_ball_volume: f64,
}

impl DimensionConstants {
    pub fn sphere_area(&self) -> f64 {
        self.log_sphere_area.exp()
    }

    pub fn ball_volume(&self) -> f64 {
        self.log_ball_volume.exp()
    }
}

/// Sphere area and ball volume for dimension `d >= 1`.
pub fn dimension_constants(d: usize) -> Result<DimensionConstants> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let half = d as f64 / 2.0;
    let log_pi_part = half * PI.ln();
    Ok(DimensionConstants {
        d,
        log_sphere_area: std::f64::consts::LN_2 + log_pi_part - log_gamma(half)?,
        log_ball_volume: log_pi_part - log_gamma(half + 1.0)?,
    })
}
