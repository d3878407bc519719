//! Radial integrals of `|x|^{-d/2} ln^{-1/2}(1/|x|)` and its powers on the
//! ball of radius `1/2`: the local behavior of the endpoint counterexample.

use crate::error::{Error, Result};
use crate::params::EXACT_TOL;
use crate::radial::{radial_integral, RadialProfile};
use crate::specialfn::dimension_constants;

/// `∫_{δ<|x|<1/2} |x|^{-d} ln^{-1}(1/|x|) dx = ω_{d-1}(ln ln(1/δ) - ln ln 2)`,
/// the squared `L²` mass; it grows without bound as `δ → 0`.
pub fn endpoint_tail_mass(delta: f64, d: usize) -> Result<f64> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Domain(format!("delta must lie in (0, 1/2), got {delta}")));
    }
    let omega = dimension_constants(d)?.sphere_area();
    Ok(omega * ((1.0 / delta).ln().ln() - std::f64::consts::LN_2.ln()))
}

/// `∫_{|x|<1/2} |x|^{-d} ln^{-p/2}(1/|x|) dx = ω_{d-1} ln^{1-p/2}(2)/(p/2 - 1)`,
/// the `p`-th power of `‖|x|^θ f‖_p` near the origin at the endpoint
/// `θ = d/2 - d/p`.
pub fn endpoint_weighted_mass(d: usize, p: f64, theta: f64) -> Result<f64> {
    if !(p > 2.0) {
        return Err(Error::Divergence(format!(
            "∫ dr/(r ln^(p/2)(1/r)) diverges for p <= 2, got p={p}"
        )));
    }
    let df = d as f64;
    let endpoint = df / 2.0 - df / p;
    if (theta - endpoint).abs() > EXACT_TOL {
        return Err(Error::Domain(format!("theta must equal d/2 - d/p = {endpoint}, got {theta}")));
    }
    let omega = dimension_constants(d)?.sphere_area();
    let k = 0.5 * p - 1.0;
    Ok(omega * (-k * std::f64::consts::LN_2.ln()).exp() / k)
}

/// `∫_{|x|<1/2} |x|^{-d/2} ln^{-1/2}(1/|x|) dx`, finite: the function is
/// locally integrable even though it is not locally square integrable.
pub fn endpoint_l1_mass(d: usize) -> Result<f64> {
    radial_integral(&RadialProfile::power_log(-0.5 * d as f64, -0.5), d, 0.0, 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadOptions};
    use approx::assert_relative_eq;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn tail_mass_values() {
        let v = endpoint_tail_mass(1e-6, 1).unwrap();
        assert_relative_eq!(v, 2.0 * ((1e6f64).ln().ln() - LN_2.ln()), max_relative = 1e-14);
        assert!(endpoint_tail_mass(0.5 - 1e-12, 2).unwrap().abs() < 1e-9);
        assert!(endpoint_tail_mass(0.5, 2).is_err());
        assert!(endpoint_tail_mass(0.0, 2).is_err());
    }

    #[test]
    fn tail_mass_doubling_steps() {
        for d in [1usize, 2, 3] {
            let omega = dimension_constants(d).unwrap().sphere_area();
            let masses: Vec<f64> = [-3, -6, -12, -24].iter().map(|&e| endpoint_tail_mass(10f64.powi(e), d).unwrap()).collect();
            for w in masses.windows(2) {
                assert!(w[1] > w[0]);
                assert_relative_eq!(w[1] - w[0], omega * LN_2, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn tail_mass_matches_quadrature() {
        for d in [1usize, 2, 3] {
            let omega = dimension_constants(d).unwrap().sphere_area();
            for delta in [0.3f64, 1e-2, 1e-5, 1e-9, 1e-15] {
                // in u = ln(1/r) the integrand is 1/u
                let q = integrate(|u| 1.0 / u, LN_2, (1.0 / delta).ln(), QuadOptions { rel_tol: 1e-13, ..Default::default() })
                    .unwrap();
                assert_relative_eq!(endpoint_tail_mass(delta, d).unwrap(), omega * q.value, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn weighted_mass() {
        assert_relative_eq!(endpoint_weighted_mass(2, 4.0, 0.5).unwrap(), 2.0 * PI / LN_2, max_relative = 1e-14);
        assert!(matches!(endpoint_weighted_mass(2, 2.0, 0.0), Err(Error::Divergence(_))));
        assert!(matches!(endpoint_weighted_mass(2, 4.0, 0.4), Err(Error::Domain(_))));
        // quadrature of the same integrand, truncated at 1e-8, in u = ln(1/r)
        let (d, p) = (3usize, 6.0);
        let theta = 1.5 - 0.5;
        let omega = dimension_constants(d).unwrap().sphere_area();
        let q = integrate(|u| u.powf(-p / 2.0), LN_2, (1e8f64).ln(), QuadOptions::default()).unwrap();
        let tail = omega * (1e8f64).ln().powf(1.0 - p / 2.0) / (p / 2.0 - 1.0);
        assert_relative_eq!(omega * q.value + tail, endpoint_weighted_mass(d, p, theta).unwrap(), max_relative = 1e-6);
    }

    #[test]
    fn locally_integrable() {
        for d in 1..=4 {
            let v = endpoint_l1_mass(d).unwrap();
            assert!(v.is_finite() && v > 0.0);
        }
    }
}
