use crate::error::{Error, Result};
use crate::params::{lp_regime, Regime};
use crate::radial::{log_radial_weighted_norm_pow, RadialProfile};

/// `g_c(r) = c^{-d/2} e^{-π r²/c²} + c^{d/2} e^{-π c² r²}`, its own Fourier
/// transform for every `c > 0`.
pub fn gc_profile(c: f64, d: usize) -> Result<RadialProfile> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("g_c needs c > 0, got {c}")));
    }
    let half = 0.5 * d as f64;
    RadialProfile::gaussian_mixture([(c.powf(-half), 1.0 / (c * c)), (c.powf(half), c * c)])
}

/// `V_p(g_c) / ‖g_c‖_p^p`, cross terms included. Since `ĝ_c = g_c` the full
/// uncertainty product is the square of this.
pub fn gc_uncertainty_ratio(c: f64, d: usize, p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("p must exceed 1, got {p}")));
    }
    let g = gc_profile(c, d)?;
    let moment = log_radial_weighted_norm_pow(&g, d, p, 1.0)?;
    let mass = log_radial_weighted_norm_pow(&g, d, p, 0.0)?;
    let ratio = (moment - mass).exp();
    if !ratio.is_finite() {
        return Err(Error::Divergence(format!("moment ratio of g_c is {ratio} at c={c}, d={d}, p={p}")));
    }
    Ok(ratio)
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// The two-term upper envelope
/// `(c^{d+p-dp/2} + c^{-(d+p)+dp/2}) / (c^{d-dp/2} + c^{dp/2-d})`.
pub fn h_bound(c: f64, d: usize, p: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("h needs c > 0, got {c}")));
    }
    if !(p > 2.0) || !p.is_finite() {
        return Err(Error::Domain(format!("h is only defined for p > 2 (t = c^(dp/2-d) degenerates at p = 2), got p={p}")));
    }
    let (df, lc) = (d as f64, c.ln());
    let e_num = df + p - 0.5 * df * p;
    let e_den = df - 0.5 * df * p;
    Ok((log_sum_exp(e_num * lc, -e_num * lc) - log_sum_exp(e_den * lc, -e_den * lc)).exp())
}

/// `α = |2(d + p - dp/2) / ((p-2) d)|`; `h(c)` decays like `c^{-(1-α)·...}`
/// exactly when `α < 1`.
pub fn alpha_exponent(d: usize, p: f64) -> Result<f64> {
    if d == 0 || !p.is_finite() || (p - 2.0).abs() <= 1e-12 || p <= 1.0 {
        return Err(Error::Domain(format!("alpha needs d >= 1 and p > 1 with p != 2, got d={d}, p={p}")));
    }
    let df = d as f64;
    Ok((2.0 * (df + p - 0.5 * df * p) / ((p - 2.0) * df)).abs())
}

/// Squared `g_c` ratios along `c_values`; only meaningful above the critical
/// exponent, where the products collapse towards zero.
pub fn gc_infimum_sweep(d: usize, p: f64, c_values: &[f64]) -> Result<Vec<f64>> {
    let regime = lp_regime(d, p)?;
    if regime != Regime::Supercritical {
        return Err(Error::Regime(format!(
            "the g_c collapse needs p > 2d/(d-1); (d={d}, p={p}) is {regime:?}"
        )));
    }
    if c_values.iter().any(|&c| !(c >= 1.0)) || c_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(format!("c values must be increasing and >= 1, got {c_values:?}")));
    }
    c_values
        .iter()
        .map(|&c| gc_uncertainty_ratio(c, d, p).map(|r| r * r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::lp_params;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn profile_shapes() {
        let g = gc_profile(1.0, 3).unwrap();
        assert_eq!(g, RadialProfile::gaussian_mixture([(2.0, 1.0)]).unwrap());
        let g = gc_profile(2.0, 1).unwrap();
        let want = RadialProfile::gaussian_mixture([(2f64.sqrt().recip(), 0.25), (2f64.sqrt(), 4.0)]).unwrap();
        assert!(g.approx_eq(&want, 1e-15));
        for c in [0.3, 2.0, 7.5] {
            for d in [1, 2, 5] {
                assert!(gc_profile(c, d).unwrap().approx_eq(&gc_profile(1.0 / c, d).unwrap(), 1e-14));
            }
        }
    }

    #[test]
    fn unit_c_ratio() {
        assert_relative_eq!(gc_uncertainty_ratio(1.0, 1, 2.0).unwrap(), 1.0 / (4.0 * PI), max_relative = 1e-12);
    }

    #[test]
    fn h_values() {
        assert_relative_eq!(h_bound(1.0, 2, 5.0).unwrap(), 1.0, max_relative = 1e-15);
        // d=2, p=5: exponents 2 and -3
        let c: f64 = 4.0;
        let direct = (c.powi(2) + c.powi(-2)) / (c.powi(-3) + c.powi(3));
        assert_relative_eq!(h_bound(c, 2, 5.0).unwrap(), direct, max_relative = 1e-14);
        assert_relative_eq!(h_bound(3.3, 3, 4.5).unwrap(), h_bound(1.0 / 3.3, 3, 4.5).unwrap(), max_relative = 1e-14);
        assert!(h_bound(2.0, 2, 2.0).is_err());
    }

    #[test]
    fn alpha_values() {
        assert_relative_eq!(alpha_exponent(2, 4.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(alpha_exponent(2, 5.0).unwrap(), 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(alpha_exponent(3, 2.5).unwrap(), 7.0 / 3.0, max_relative = 1e-14);
        assert!(alpha_exponent(2, 2.0).is_err());
    }

    #[test]
    fn collapse_above_critical() {
        let cs = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
        for (d, p) in [(2, 5.0), (3, 4.0)] {
            let v = gc_infimum_sweep(d, p, &cs).unwrap();
            assert!(v.windows(2).all(|w| w[1] < w[0]), "d={d} p={p}: {v:?}");
        }
        assert!(matches!(gc_infimum_sweep(3, 2.0, &cs), Err(Error::Regime(_))));
    }

    #[test]
    fn subcritical_products_respect_the_certified_bound() {
        for (d, p) in [(1, 2.0), (2, 1.5), (3, 2.5)] {
            let floor = lp_params(d, p).unwrap().bound();
            for c in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
                let r = gc_uncertainty_ratio(c, d, p).unwrap();
                assert!(r * r >= floor, "d={d} p={p} c={c}");
            }
        }
    }

    #[test]
    fn ratio_tracks_h_up_to_a_constant() {
        let (d, p) = (2, 5.0);
        let normalized: Vec<f64> = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
            .iter()
            .map(|&c| gc_uncertainty_ratio(c, d, p).unwrap().powi(2) / h_bound(c, d, p).unwrap().powi(2))
            .collect();
        let max = normalized.iter().cloned().fold(0.0, f64::max);
        let min = normalized.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max / min < 10.0, "{normalized:?}");
    }
}
