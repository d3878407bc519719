//! Parameter selection for the mass-splitting proofs: the L² choices, the
//! L^p choices and the Cowling–Price choices, each with the constant it
//! certifies.
//!
//! All constants are carried as natural logarithms. `c_d^ε` and `ω_{d-1}`
//! span hundreds of orders of magnitude once `d` is in the hundreds.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specialfn::{dimension_constants, DimensionConstants};

/// Absolute tolerance for equality tests on real-valued exponent conditions.
pub const EXACT_TOL: f64 = 1e-12;

/// Which proof produced a [`UncertaintyParams`] bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// `p = 2`, `a = 2(d+1)/(d+3)`; the tail integral uses `|x|^{-(d+1)}`.
    L2,
    /// General `1 < p < 2d/(d-1)` with a free `ε`.
    Lp,
}

/// Exponents, threshold constant and certified bound for one `(d, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyParams {
    pub flavor: Flavor,
    pub d: usize,
    pub p: f64,
    pub epsilon: f64,
    /// Auxiliary norm exponent paired with `p` in the primary principle.
    pub a: f64,
    /// Hölder pair, `1/r + 1/s = 1`.
    pub r: f64,
    pub s: f64,
    /// `ln c_d`, fixed by `(v_d c_d^d)^{1/s} = 1/2`.
    pub log_c_d: f64,
    /// `ln ω_{d-1}`.
    pub log_sphere_area: f64,
    /// `ln v_d`.
    pub log_ball_volume: f64,
    /// `ln C(d, p)`, the certified lower bound on the uncertainty product.
    pub log_bound: f64,
}

/// Largest dimension for which constants are also evaluated without logs.
const DIRECT_MAX_D: usize = 64;

/// `v_d` by the recurrence `v_d = 2π v_{d-2}/d` from `v_0 = 1`, `v_1 = 2`;
/// exact at `d = 1`, where the log route is off by a few ulp.
fn direct_ball_volume(d: usize) -> Option<f64> {
    if d == 0 || d > DIRECT_MAX_D {
        return None;
    }
    let (mut v, mut k) = if d.is_multiple_of(2) { (1.0, 0) } else { (2.0, 1) };
    while k < d {
        k += 2;
        v *= 2.0 * PI / k as f64;
    }
    Some(v)
}

impl UncertaintyParams {
    /// `c_d = (2^{-s}/v_d)^{1/d}`; evaluated directly for small `d`.
    pub fn c_d(&self) -> f64 {
        match direct_ball_volume(self.d) {
            Some(v) => (0.5f64.powf(self.s) / v).powf(1.0 / self.d as f64),
            None => self.log_c_d.exp(),
        }
    }

    /// The certified constant; for the L² flavour and small `d` evaluated
    /// directly as `(1/16)(c_d/ω_{d-1})^{4/(d+1)}`, so `d = 1` gives `1/4096`
    /// to the bit.
    pub fn bound(&self) -> f64 {
        match (self.flavor, direct_ball_volume(self.d)) {
            (Flavor::L2, Some(v)) => {
                let omega = self.d as f64 * v;
                (self.c_d() / omega).powf(4.0 / (self.d as f64 + 1.0)) / 16.0
            }
            _ => self.log_bound.exp(),
        }
    }

    /// Exponent of the norm quotient in the threshold, `(d + ε)/d`.
    pub fn threshold_exponent(&self) -> f64 {
        (self.d as f64 + self.epsilon) / self.d as f64
    }

    /// Log of the constant in the single-function inequality
    /// `V_p(f)/‖f‖_p^p >= K (‖f‖_a/‖f‖_p)^κ`.
    ///
    /// For the L² flavour this is the rounded `1/4 (c_d²/ω²)^{1/(d+1)}`; its
    /// square is exactly `exp(log_bound)`.
    pub fn log_single_constant(&self) -> f64 {
        match self.flavor {
            Flavor::L2 => {
                (0.25f64).ln() + 2.0 * (self.log_c_d - self.log_sphere_area) / (self.d as f64 + 1.0)
            }
            Flavor::Lp => {
                -LN_2
                    + (self.r - 1.0)
                        * (self.epsilon.ln() + self.epsilon * self.log_c_d - LN_2 - self.log_sphere_area)
            }
        }
    }

    /// `κ = p (1 + ε/d)`.
    pub fn single_exponent(&self) -> f64 {
        self.p * (1.0 + self.epsilon / self.d as f64)
    }

    /// Ball-volume normalization defect `(v_d c_d^d)^{1/s} - 1/2`.
    pub fn half_mass_defect(&self) -> f64 {
        ((self.d as f64 * self.log_c_d + self.log_ball_volume) / self.s).exp() - 0.5
    }
}

fn half_mass_log_c(d: usize, s: f64, dims: &DimensionConstants) -> f64 {
    (-s * LN_2 - dims.log_ball_volume) / d as f64
}

fn check_dimension(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::Domain("dimension must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_exponent(name: &str, p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        Err(Error::Domain(format!("{name} must satisfy 1 < {name} < inf, got {name}={p}")))
    } else {
        Ok(())
    }
}

/// The L² parameter bundle in dimension `d`.
pub fn l2_params(d: usize) -> Result<UncertaintyParams> {
    check_dimension(d)?;
    let dims = dimension_constants(d)?;
    let df = d as f64;
    let s = (df + 3.0) / 2.0;
    let log_c_d = half_mass_log_c(d, s, &dims);
    let log_bound = (1.0f64 / 16.0).ln() + 2.0 / (df + 1.0) * (2.0 * log_c_d - 2.0 * dims.log_sphere_area);
    Ok(UncertaintyParams {
        flavor: Flavor::L2,
        d,
        p: 2.0,
        epsilon: 1.0,
        a: 2.0 * (df + 1.0) / (df + 3.0),
        r: (df + 3.0) / (df + 1.0),
        s,
        log_c_d,
        log_sphere_area: dims.log_sphere_area,
        log_ball_volume: dims.log_ball_volume,
        log_bound,
    })
}

/// Critical exponent `2d/(d-1)`; infinite for `d = 1`.
pub fn critical_exponent(d: usize) -> f64 {
    if d == 1 {
        f64::INFINITY
    } else {
        2.0 * d as f64 / (d as f64 - 1.0)
    }
}

/// Choose `ε > 0` with `(d+ε)p/(d+ε+p) > 1` and `p <= 2(d+ε)/(d-1+ε)`.
///
/// `p <= 2` takes `ε = p/(p-1)`; `2 < p < 2d/(d-1)` takes the midpoint of
/// the feasible window `(max(0, (d+p-dp)/(p-1)), (2d-p(d-1))/(p-2)]`.
pub fn lp_epsilon(d: usize, p: f64) -> Result<f64> {
    check_dimension(d)?;
    check_exponent("p", p)?;
    let crit = critical_exponent(d);
    if p >= crit {
        return Err(Error::Infeasible(format!(
            "p must satisfy 1 < p < 2d/(d-1) = {crit} for d={d}, got p={p}"
        )));
    }
    if p <= 2.0 {
        return Ok(p / (p - 1.0));
    }
    let df = d as f64;
    let lower = ((df + p - df * p) / (p - 1.0)).max(0.0);
    let upper = (2.0 * df - p * (df - 1.0)) / (p - 2.0);
    if !(upper > lower) {
        return Err(Error::Infeasible(format!("empty epsilon window ({lower}, {upper}] for d={d}, p={p}")));
    }
    Ok(0.5 * (lower + upper))
}

/// The L^p parameter bundle for `1 < p < 2d/(d-1)`.
pub fn lp_params(d: usize, p: f64) -> Result<UncertaintyParams> {
    let epsilon = lp_epsilon(d, p)?;
    let dims = dimension_constants(d)?;
    let de = d as f64 + epsilon;
    let a = p * de / (de + p);
    let r = p / a;
    let s = (de + p) / p;
    let log_c_d = half_mass_log_c(d, s, &dims);
    let log_bound = (0.25f64).ln()
        + 2.0 * (r - 1.0) * (epsilon.ln() + epsilon * log_c_d - LN_2 - dims.log_sphere_area);
    Ok(UncertaintyParams {
        flavor: Flavor::Lp,
        d,
        p,
        epsilon,
        a,
        r,
        s,
        log_c_d,
        log_sphere_area: dims.log_sphere_area,
        log_ball_volume: dims.log_ball_volume,
        log_bound,
    })
}

/// `1 < a < p` and `1/a + 1/p >= 1` (the equality case included).
pub fn primary_up_admissible(a: f64, p: f64) -> bool {
    a.is_finite() && p.is_finite() && a > 1.0 && a < p && 1.0 / a + 1.0 / p >= 1.0 - EXACT_TOL
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

/// Position of `p` relative to the critical exponent `2d/(d-1)`.
pub fn lp_regime(d: usize, p: f64) -> Result<Regime> {
    check_dimension(d)?;
    check_exponent("p", p)?;
    let crit = critical_exponent(d);
    if crit.is_infinite() {
        return Ok(Regime::Subcritical);
    }
    Ok(if (p - crit).abs() <= EXACT_TOL * crit {
        Regime::Critical
    } else if p < crit {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    })
}

/// Exponents of a weighted inequality `‖|x|^θ f‖_p ‖|ξ|^φ f̂‖_q >= C ‖f‖_2²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CpExponents {
    pub d: usize,
    pub p: f64,
    pub q: f64,
    pub theta: f64,
    pub phi: f64,
}

impl CpExponents {
    pub fn new(d: usize, p: f64, q: f64, theta: f64, phi: f64) -> Result<Self> {
        check_dimension(d)?;
        check_exponent("p", p)?;
        check_exponent("q", q)?;
        for (name, v) in [("theta", theta), ("phi", phi)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { d, p, q, theta, phi })
    }

    /// `θ/d - (1/2 - 1/p)`; positive on the feasible side.
    pub fn theta_margin(&self) -> f64 {
        self.theta / self.d as f64 - (0.5 - 1.0 / self.p)
    }

    /// `φ/d - (1/2 - 1/q)`.
    pub fn phi_margin(&self) -> f64 {
        self.phi / self.d as f64 - (0.5 - 1.0 / self.q)
    }

    /// `(1/q + φ/d, 1/p + θ/d)`.
    pub fn homogeneity_sides(&self) -> (f64, f64) {
        let d = self.d as f64;
        (1.0 / self.q + self.phi / d, 1.0 / self.p + self.theta / d)
    }

    pub fn is_homogeneous(&self) -> bool {
        let (lhs, rhs) = self.homogeneity_sides();
        (lhs - rhs).abs() <= EXACT_TOL
    }
}

/// Which side of the weighted-inequality trichotomy a tuple falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CpClass {
    /// Both strict inequalities hold: the inequality is true.
    Feasible,
    /// `θ/d = 1/2 - 1/p` (and then `φ/d = 1/2 - 1/q`).
    Endpoint,
    /// `θ/d < 1/2 - 1/p`: the inequality fails.
    Violated,
}

/// Classify a homogeneous tuple; non-homogeneous tuples are an error.
pub fn cp_classify(ex: &CpExponents) -> Result<CpClass> {
    if !ex.is_homogeneous() {
        let (lhs, rhs) = ex.homogeneity_sides();
        return Err(Error::Homogeneity { lhs, rhs });
    }
    let (mt, mp) = (ex.theta_margin(), ex.phi_margin());
    Ok(if mt > EXACT_TOL && mp > EXACT_TOL {
        CpClass::Feasible
    } else if mt.abs() <= EXACT_TOL || mp.abs() <= EXACT_TOL {
        CpClass::Endpoint
    } else {
        CpClass::Violated
    })
}

/// Both strict margin inequalities and the homogeneity identity hold.
pub fn cp_feasible(d: usize, p: f64, q: f64, theta: f64, phi: f64) -> bool {
    match CpExponents::new(d, p, q, theta, phi) {
        Ok(ex) => matches!(cp_classify(&ex), Ok(CpClass::Feasible)),
        Err(_) => false,
    }
}

/// Open window `(max(0, lower), upper)` for `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaWindow {
    pub lower: f64,
    pub upper: f64,
}

impl DeltaWindow {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, delta: f64) -> bool {
        delta > self.lower && delta < self.upper
    }
}

/// The `δ` window; its right end picks up a third term when `p >= 2`.
pub fn cp_delta_window(ex: &CpExponents) -> Result<DeltaWindow> {
    let d = ex.d as f64;
    let phi_side = 1.0 + d / (ex.phi * ex.q);
    let lower = phi_side - (1.0 - 1.0 / ex.p) * phi_side * d / ex.theta;
    let mut upper = phi_side.min(1.0 + d / (ex.theta * ex.p));
    if ex.p >= 2.0 {
        upper = upper.min(phi_side - (0.5 - 1.0 / ex.p) * phi_side * d / ex.theta);
    }
    let window = DeltaWindow { lower: lower.max(0.0), upper };
    if !(window.upper > window.lower) {
        return Err(Error::Infeasible(format!(
            "empty delta window ({}, {}) for {ex:?}",
            window.lower, window.upper
        )));
    }
    Ok(window)
}

/// `δ` at the midpoint of its window. Requires a feasible tuple.
pub fn cp_delta(d: usize, p: f64, q: f64, theta: f64, phi: f64) -> Result<f64> {
    let ex = feasible_exponents(d, p, q, theta, phi)?;
    Ok(cp_delta_window(&ex)?.midpoint())
}

fn feasible_exponents(d: usize, p: f64, q: f64, theta: f64, phi: f64) -> Result<CpExponents> {
    let ex = CpExponents::new(d, p, q, theta, phi)?;
    match cp_classify(&ex)? {
        CpClass::Feasible => Ok(ex),
        class => Err(Error::Infeasible(format!(
            "tuple {ex:?} is {class:?}: need theta/d > 1/2 - 1/p and phi/d > 1/2 - 1/q"
        ))),
    }
}

/// Parameter bundle for the weighted inequality, with its certified constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CowlingPriceParams {
    pub exponents: CpExponents,
    pub delta: f64,
    pub epsilon: f64,
    pub epsilon_tilde: f64,
    pub a: f64,
    /// `a` recomputed from the Fourier side; equals `a` on feasible tuples.
    pub a_tilde: f64,
    pub r: f64,
    pub s: f64,
    pub b: f64,
    pub r1: f64,
    pub s1: f64,
    pub b_tilde: f64,
    pub r1_tilde: f64,
    pub s1_tilde: f64,
    pub log_c_d: f64,
    pub log_sphere_area: f64,
    pub log_ball_volume: f64,
    /// `ln C` in `‖|x|^θ f‖_p ‖|ξ|^φ f̂‖_q >= C ‖f‖_2²`.
    pub log_bound: f64,
}

impl CowlingPriceParams {
    pub fn bound(&self) -> f64 {
        self.log_bound.exp()
    }

    /// Threshold exponent `a s / d` used for `T = c_d (‖f‖_a/‖f‖_2)^{as/d}`.
    pub fn threshold_exponent(&self) -> f64 {
        self.a * self.s / self.exponents.d as f64
    }

    /// Exponent `1 + ε s/(d s_1)` of the norm quotient on the original side.
    pub fn quotient_exponent(&self) -> f64 {
        1.0 + self.epsilon * self.s / (self.exponents.d as f64 * self.s1)
    }

    /// Same exponent from the Fourier side.
    pub fn quotient_exponent_tilde(&self) -> f64 {
        1.0 + self.epsilon_tilde * self.s / (self.exponents.d as f64 * self.s1_tilde)
    }
}

/// Build the full parameter bundle for a feasible tuple.
pub fn cp_params(d: usize, p: f64, q: f64, theta: f64, phi: f64) -> Result<CowlingPriceParams> {
    let ex = feasible_exponents(d, p, q, theta, phi)?;
    let delta = cp_delta_window(&ex)?.midpoint();
    let df = d as f64;
    let (phi_q, theta_p) = (phi * q, theta * p);
    let epsilon = df * delta * phi_q / (df + phi_q - delta * phi_q);
    let epsilon_tilde = df * delta * theta_p / (df + theta_p - delta * theta_p);

    let a = p / (1.0 + p * theta / (df + epsilon));
    let a_tilde = q / (1.0 + q * phi / (df + epsilon_tilde));
    let r = 2.0 / a;
    let s = r / (r - 1.0);

    let r1 = p / a;
    let s1 = r1 / (r1 - 1.0);
    let b = theta_p / r1;
    let r1_tilde = q / a_tilde;
    let s1_tilde = r1_tilde / (r1_tilde - 1.0);
    let b_tilde = phi_q / r1_tilde;

    let dims = dimension_constants(d)?;
    let log_c_d = half_mass_log_c(d, s, &dims);
    let side = |eps: f64, s1: f64| -> f64 {
        (eps.ln() + eps * log_c_d - s1 * LN_2 - dims.log_sphere_area) / (a * s1)
    };
    let log_bound = side(epsilon, s1) + side(epsilon_tilde, s1_tilde);

    Ok(CowlingPriceParams {
        exponents: ex,
        delta,
        epsilon,
        epsilon_tilde,
        a,
        a_tilde,
        r,
        s,
        b,
        r1,
        s1,
        b_tilde,
        r1_tilde,
        s1_tilde,
        log_c_d,
        log_sphere_area: dims.log_sphere_area,
        log_ball_volume: dims.log_ball_volume,
        log_bound,
    })
}

/// Radius splitting the `‖f‖_a^a` mass in half,
/// `T = c_d (norm_a / norm_p)^{(d+ε)/d}`.
pub fn compute_threshold(norm_a: f64, norm_p: f64, params: &UncertaintyParams) -> Result<f64> {
    if !(norm_a > 0.0) || !(norm_p > 0.0) || !norm_a.is_finite() || !norm_p.is_finite() {
        return Err(Error::Domain(format!(
            "threshold needs positive finite norms, got ({norm_a}, {norm_p})"
        )));
    }
    Ok((params.log_c_d + params.threshold_exponent() * (norm_a / norm_p).ln()).exp())
}
