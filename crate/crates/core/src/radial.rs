//! Integrals of radial functions on ℝ^d, reduced to one dimension.
//!
//! `∫_{lo<|x|<hi} F(|x|) dx = ω_{d-1} ∫_lo^hi F(r) r^{d-1} dr`. Gaussian
//! mixtures go through the incomplete Gamma function; everything else is
//! integrated numerically in a logarithmic radius so that very narrow and very
//! wide features coexist in one call.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_with_breaks, QuadOptions};
use crate::specialfn::{dimension_constants, gamma_pq, log_gamma, log_gamma_ratio};

/// One term `coef · exp(-π rate r²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianTerm {
    pub coef: f64,
    pub rate: f64,
}

/// A radial function of `r = |x|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum RadialProfile {
    /// `Σ coef_i exp(-π rate_i r²)`.
    Gaussian(Vec<GaussianTerm>),
    /// `r^exponent · ln^log_exponent(1/r)` on `(0, cutoff)`, zero beyond.
    ///
    /// The cutoff is `1/2` whenever `log_exponent != 0` (so that the
    /// logarithm stays positive and away from zero) and `∞` for pure powers.
    PowerLog { exponent: f64, log_exponent: f64, cutoff: f64 },
}

impl RadialProfile {
    /// Build a Gaussian mixture. Terms with equal rates are merged and the
    /// result is sorted by rate, so two mixtures describing the same function
    /// compare equal regardless of term order.
    pub fn gaussian_mixture(terms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut out: Vec<GaussianTerm> = Vec::new();
        for (coef, rate) in terms {
            if !(rate > 0.0) || !rate.is_finite() || !coef.is_finite() {
                return Err(Error::Domain(format!("gaussian term needs finite coef and rate > 0, got ({coef}, {rate})")));
            }
            match out.iter_mut().find(|t| t.rate == rate) {
                Some(t) => t.coef += coef,
                None => out.push(GaussianTerm { coef, rate }),
            }
        }
        out.sort_by(|a, b| a.rate.total_cmp(&b.rate));
        Ok(RadialProfile::Gaussian(out))
    }

    /// `exp(-π r²)`, the self-dual Gaussian.
    pub fn standard_gaussian() -> Self {
        RadialProfile::Gaussian(vec![GaussianTerm { coef: 1.0, rate: 1.0 }])
    }

    /// `r^exponent` on `(0, ∞)`.
    pub fn power(exponent: f64) -> Self {
        RadialProfile::PowerLog { exponent, log_exponent: 0.0, cutoff: f64::INFINITY }
    }

    /// `r^exponent ln^log_exponent(1/r)` on `(0, 1/2)`.
    pub fn power_log(exponent: f64, log_exponent: f64) -> Self {
        let cutoff = if log_exponent == 0.0 { f64::INFINITY } else { 0.5 };
        RadialProfile::PowerLog { exponent, log_exponent, cutoff }
    }

    pub fn value(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Gaussian(terms) => terms.iter().map(|t| t.coef * (-PI * t.rate * r * r).exp()).sum(),
            RadialProfile::PowerLog { exponent, log_exponent, cutoff } => {
                if r <= 0.0 || r >= *cutoff {
                    0.0
                } else if *log_exponent == 0.0 {
                    r.powf(*exponent)
                } else {
                    r.powf(*exponent) * (1.0 / r).ln().powf(*log_exponent)
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RadialProfile::Gaussian(t) if t.iter().all(|t| t.coef == 0.0))
    }

    /// True when the profile is a mixture with nonnegative coefficients.
    pub fn is_nonnegative_mixture(&self) -> bool {
        matches!(self, RadialProfile::Gaussian(t) if t.iter().all(|t| t.coef >= 0.0))
    }

    /// Term-wise comparison up to a relative tolerance.
    pub fn approx_eq(&self, other: &Self, rel: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= rel * a.abs().max(b.abs()) || a == b;
        match (self, other) {
            (RadialProfile::Gaussian(a), RadialProfile::Gaussian(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| close(x.coef, y.coef) && close(x.rate, y.rate))
            }
            (
                RadialProfile::PowerLog { exponent: e1, log_exponent: l1, cutoff: c1 },
                RadialProfile::PowerLog { exponent: e2, log_exponent: l2, cutoff: c2 },
            ) => close(*e1, *e2) && close(*l1, *l2) && c1 == c2,
            _ => false,
        }
    }
}

fn check_limits(lo: f64, hi: f64) -> Result<()> {
    if !(lo >= 0.0) || hi.is_nan() || hi < lo {
        return Err(Error::Domain(format!("radial limits must satisfy 0 <= lo <= hi, got ({lo}, {hi})")));
    }
    Ok(())
}

fn tight() -> QuadOptions {
    QuadOptions { rel_tol: 1e-12, ..QuadOptions::default() }
}

/// `ω_{d-1} ∫_lo^hi F(r) r^{d-1} dr`.
pub fn radial_integral(profile: &RadialProfile, d: usize, lo: f64, hi: f64) -> Result<f64> {
    check_limits(lo, hi)?;
    let dims = dimension_constants(d)?;
    let df = d as f64;
    if lo == hi {
        return Ok(0.0);
    }
    match profile {
        RadialProfile::Gaussian(terms) => {
            let half_d = 0.5 * df;
            let mut total = 0.0;
            for t in terms {
                let u_lo = PI * t.rate * lo * lo;
                let u_hi = PI * t.rate * hi * hi;
                let (p_lo, q_lo) = gamma_pq(half_d, u_lo)?;
                let (p_hi, q_hi) = gamma_pq(half_d, u_hi)?;
                // take the difference on the side where it is not a small
                // difference of numbers close to 1
                let mass = if u_lo > half_d { q_lo - q_hi } else { p_hi - p_lo };
                total += t.coef * t.rate.powf(-half_d) * mass;
            }
            Ok(total)
        }
        RadialProfile::PowerLog { exponent, log_exponent, cutoff } => {
            let hi = hi.min(*cutoff);
            if hi <= lo {
                return Ok(0.0);
            }
            let k = exponent + df;
            let beta = *log_exponent;
            if lo == 0.0 && !(k > 0.0 || (k == 0.0 && beta < -1.0)) {
                return Err(Error::NonIntegrable(format!(
                    "r^{exponent} ln^{beta}(1/r) is not integrable at the origin in dimension {d}"
                )));
            }
            if hi.is_infinite() && !(k < 0.0) {
                return Err(Error::NonIntegrable(format!(
                    "r^{exponent} is not integrable at infinity in dimension {d}"
                )));
            }
            let omega = dims.log_sphere_area.exp();
            if beta == 0.0 {
                let v = if k == 0.0 {
                    hi.ln() - lo.ln()
                } else {
                    (hi.powf(k) - lo.powf(k)) / k
                };
                return Ok(omega * v);
            }
            // u = ln(1/r): ∫ e^{-k u} u^β du over (ln(1/hi), ln(1/lo)); the
            // cutoff 1/2 keeps u >= ln 2 > 0
            let u_lo = (1.0 / hi).ln();
            let u_hi = if lo == 0.0 { f64::INFINITY } else { (1.0 / lo).ln() };
            if k == 0.0 {
                let v = if beta == -1.0 {
                    u_hi.ln() - u_lo.ln()
                } else {
                    let e = beta + 1.0;
                    (u_hi.powf(e) - u_lo.powf(e)) / e
                };
                return Ok(omega * v);
            }
            let q = integrate(|u| (-k * u).exp() * u.powf(beta), u_lo, u_hi, tight())?;
            Ok(omega * q.value)
        }
    }
}

/// `‖ |x|^w F ‖_p = (ω_{d-1} ∫_0^∞ r^{pw} |F(r)|^p r^{d-1} dr)^{1/p}`.
pub fn radial_weighted_norm(profile: &RadialProfile, d: usize, p: f64, w: f64) -> Result<f64> {
    Ok((log_radial_weighted_norm_pow(profile, d, p, w)? / p).exp())
}

/// Log of `‖ |x|^w F ‖_p^p`; `-∞` for the zero profile.
pub fn log_radial_weighted_norm_pow(profile: &RadialProfile, d: usize, p: f64, w: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() || !(w >= 0.0) || !w.is_finite() {
        return Err(Error::Domain(format!("weighted norm needs finite p >= 1 and w >= 0, got p={p}, w={w}")));
    }
    let dims = dimension_constants(d)?;
    let df = d as f64;
    match profile {
        RadialProfile::Gaussian(terms) => {
            let live: Vec<&GaussianTerm> = terms.iter().filter(|t| t.coef != 0.0).collect();
            if live.is_empty() {
                return Ok(f64::NEG_INFINITY);
            }
            let m = p * w + df;
            if let [t] = live[..] {
                return Ok(dims.log_sphere_area + p * t.coef.abs().ln() + log_gamma(0.5 * m)?
                    - LN_2
                    - 0.5 * m * (PI * t.rate * p).ln());
            }
            // Integrate in t = ln r. Work relative to the largest single-term
            // peak so the integrand stays O(1) even for large d.
            let peaks: Vec<f64> = live.iter().map(|t| 0.5 * (m / (2.0 * PI * t.rate * p)).ln()).collect();
            let log_scale = live
                .iter()
                .zip(&peaks)
                .map(|(t, &tp)| m * tp + p * t.coef.abs().ln() - p * PI * t.rate * (2.0 * tp).exp())
                .fold(f64::NEG_INFINITY, f64::max);
            let integrand = |t: f64| {
                let r = t.exp();
                let f = profile.value(r).abs();
                if f == 0.0 {
                    0.0
                } else {
                    (m * t + p * f.ln() - log_scale).exp()
                }
            };
            let mut breaks: Vec<f64> = vec![f64::NEG_INFINITY];
            let width = 3.0 / m.sqrt().max(0.5);
            for &tp in &peaks {
                breaks.extend([tp - width, tp, tp + width]);
            }
            breaks.push(f64::INFINITY);
            breaks.sort_by(f64::total_cmp);
            breaks.dedup();
            let q = integrate_with_breaks(integrand, &breaks, tight())?;
            if !(q.value > 0.0) {
                return Err(Error::NonFinite(format!("weighted norm quadrature returned {}", q.value)));
            }
            Ok(dims.log_sphere_area + log_scale + q.value.ln())
        }
        RadialProfile::PowerLog { exponent, log_exponent, cutoff } => {
            let powered = RadialProfile::PowerLog {
                exponent: p * (exponent + w),
                log_exponent: p * log_exponent,
                cutoff: *cutoff,
            };
            match radial_integral(&powered, d, 0.0, *cutoff) {
                Ok(v) => Ok(v.ln()),
                Err(Error::NonIntegrable(msg)) => Err(Error::Divergence(msg)),
                Err(e) => Err(e),
            }
        }
    }
}

/// `V_p(g)/‖g‖_p^p` for the standard Gaussian, `Γ((p+d)/2)/Γ(d/2)·(πp)^{-p/2}`.
pub fn log_gaussian_moment_ratio(d: usize, p: f64) -> Result<f64> {
    if d == 0 || !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!("gaussian moment ratio needs d >= 1 and p > 0, got d={d}, p={p}")));
    }
    let df = d as f64;
    Ok(log_gamma_ratio(0.5 * (p + df), 0.5 * df)? - 0.5 * p * (PI * p).ln())
}

/// Log of the Gaussian uncertainty product
/// `Γ((p+d)/2)² / Γ(d/2)² · (πp)^{-p}`.
pub fn log_gaussian_uncertainty_product(d: usize, p: f64) -> Result<f64> {
    Ok(2.0 * log_gaussian_moment_ratio(d, p)?)
}

/// The uncertainty product of the standard Gaussian, which is its own
/// Fourier transform; at `p = 2` this is `d²/(16π²)`.
pub fn gaussian_uncertainty_product(d: usize, p: f64) -> Result<f64> {
    Ok(log_gaussian_uncertainty_product(d, p)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tail_integrals() {
        for d in 1..=8 {
            let omega = dimension_constants(d).unwrap().sphere_area();
            let v = radial_integral(&RadialProfile::power(-(d as f64 + 1.0)), d, 1.0, f64::INFINITY).unwrap();
            assert_relative_eq!(v, omega, max_relative = 1e-13);
            let eps = 0.37;
            let v = radial_integral(&RadialProfile::power(-(d as f64 + eps)), d, 1.0, f64::INFINITY).unwrap();
            assert_relative_eq!(v, omega / eps, max_relative = 1e-13);
        }
    }

    #[test]
    fn gaussian_has_unit_mass_and_split_masses_add_up() {
        let g = RadialProfile::standard_gaussian();
        for d in [1, 2, 3, 10, 50, 400] {
            let total = radial_integral(&g, d, 0.0, f64::INFINITY).unwrap();
            assert_relative_eq!(total, 1.0, max_relative = 1e-12);
            let r = (d as f64 / (2.0 * PI)).sqrt();
            let inner = radial_integral(&g, d, 0.0, r).unwrap();
            let outer = radial_integral(&g, d, r, f64::INFINITY).unwrap();
            assert_relative_eq!(inner + outer, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn gaussian_integral_agrees_with_quadrature() {
        let g = RadialProfile::gaussian_mixture([(1.5, 0.3), (-0.2, 4.0)]).unwrap();
        for d in [1usize, 2, 5] {
            let omega = dimension_constants(d).unwrap().sphere_area();
            let q = integrate(|r| g.value(r) * r.powi(d as i32 - 1), 0.4, 2.5, tight()).unwrap();
            let v = radial_integral(&g, d, 0.4, 2.5).unwrap();
            assert_relative_eq!(v, omega * q.value, max_relative = 1e-11);
        }
    }

    #[test]
    fn non_integrable_is_reported() {
        let p = RadialProfile::power(-1.0);
        assert!(matches!(radial_integral(&p, 1, 0.0, 1.0), Err(Error::NonIntegrable(_))));
        assert!(matches!(radial_integral(&p, 2, 1.0, f64::INFINITY), Err(Error::NonIntegrable(_))));
        // r^{-d} ln^{-2}(1/r) is integrable at 0 even though r^{-d} is not
        let v = radial_integral(&RadialProfile::power_log(-1.0, -2.0), 1, 0.0, 0.5).unwrap();
        assert_relative_eq!(v, 2.0 / std::f64::consts::LN_2, max_relative = 1e-13);
    }

    #[test]
    fn power_log_with_decay_uses_quadrature() {
        // ∫_0^{1/2} r^{1} ln(1/r) dr in d = 1 is (1/8)(ln 2 + 1/2)
        let v = radial_integral(&RadialProfile::power_log(1.0, 1.0), 1, 0.0, 0.5).unwrap();
        assert_relative_eq!(v, 2.0 * 0.125 * (std::f64::consts::LN_2 + 0.5), max_relative = 1e-11);
    }

    #[test]
    fn gaussian_norms() {
        let g = RadialProfile::standard_gaussian();
        for d in [1usize, 2, 3, 7] {
            for p in [1.0, 1.5, 2.0, 3.0] {
                let n = radial_weighted_norm(&g, d, p, 0.0).unwrap();
                assert_relative_eq!(n, p.powf(-(d as f64) / (2.0 * p)), max_relative = 1e-13);
            }
        }
        let z = RadialProfile::gaussian_mixture([(0.0, 1.0)]).unwrap();
        assert_eq!(radial_weighted_norm(&z, 3, 2.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn mixture_quadrature_matches_closed_form() {
        // splitting one Gaussian into two equal halves must not change anything
        let g = RadialProfile::Gaussian(vec![GaussianTerm { coef: 0.5, rate: 1.0 }, GaussianTerm { coef: 0.5, rate: 1.0 + 1e-300 }]);
        for d in [1usize, 2, 3, 6, 10] {
            for p in [1.5, 2.0, 3.0] {
                for w in [0.0, 1.0] {
                    let exact = radial_weighted_norm(&RadialProfile::standard_gaussian(), d, p, w).unwrap();
                    let quad = radial_weighted_norm(&g, d, p, w).unwrap();
                    assert_relative_eq!(quad, exact, max_relative = 1e-9);
                }
            }
        }
    }

    #[test]
    fn scaling_law() {
        let sigma: f64 = 2.5;
        for d in [1usize, 3] {
            for p in [1.5, 2.0] {
                let a = radial_weighted_norm(&RadialProfile::standard_gaussian(), d, p, 0.0).unwrap();
                let wide = RadialProfile::gaussian_mixture([(1.0, 1.0 / (sigma * sigma))]).unwrap();
                let b = radial_weighted_norm(&wide, d, p, 0.0).unwrap();
                assert_relative_eq!(b / a, sigma.powf(d as f64 / p), max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn gaussian_product_at_p2() {
        for d in 1..=200usize {
            let want = (d * d) as f64 / (16.0 * PI * PI);
            assert_relative_eq!(gaussian_uncertainty_product(d, 2.0).unwrap(), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn gaussian_product_matches_moment_quadrature() {
        for d in [1usize, 2, 4, 10] {
            for p in [1.5, 2.0, 3.0] {
                let g = RadialProfile::standard_gaussian();
                let v = radial_weighted_norm(&g, d, p, 1.0).unwrap().powf(p);
                let n = radial_weighted_norm(&g, d, p, 0.0).unwrap().powf(p);
                let ratio = (v / n) * (v / n);
                assert_relative_eq!(ratio, gaussian_uncertainty_product(d, p).unwrap(), max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn mixtures_compare_order_insensitively() {
        let a = RadialProfile::gaussian_mixture([(1.0, 2.0), (3.0, 0.5)]).unwrap();
        let b = RadialProfile::gaussian_mixture([(3.0, 0.5), (1.0, 2.0)]).unwrap();
        assert_eq!(a, b);
        let merged = RadialProfile::gaussian_mixture([(1.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(merged, RadialProfile::gaussian_mixture([(2.0, 1.0)]).unwrap());
    }
}
