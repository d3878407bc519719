//! Globally adaptive Gauss–Kronrod (10/21 point) quadrature on finite and
//! infinite intervals.
//!
//! Infinite ends are mapped onto `[0, 1)` with `x = a + s/(1-s)`; the Kronrod
//! nodes never touch `s = 1`, so integrands only need to decay, not vanish.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_938_208_567,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 0.0, max_intervals: 4000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
enum Map {
    Finite,
    /// x = origin + s/(1-s)
    Upper(f64),
    /// x = origin - s/(1-s)
    Lower(f64),
}

impl Map {
    fn eval<F: Fn(f64) -> f64>(&self, f: &F, s: f64) -> f64 {
        match *self {
            Map::Finite => f(s),
            Map::Upper(a) => {
                let t = 1.0 - s;
                f(a + s / t) / (t * t)
            }
            Map::Lower(b) => {
                let t = 1.0 - s;
                f(b - s / t) / (t * t)
            }
        }
    }
}

struct Segment {
    map: Map,
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, map: Map, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = map.eval(f, center);
    let mut kron = fc * WGK[10];
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = map.eval(f, center - dx);
        let f2 = map.eval(f, center + dx);
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kron * half;
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("integrand not finite on [{lo}, {hi}]")));
    }
    // the embedded Gauss rule is the error estimate; conservative but simple
    let error = ((kron - gauss) * half).abs();
    let floor = 50.0 * f64::EPSILON * value.abs();
    Ok(Segment { map, lo, hi, value, error: error.max(floor) })
}

/// Integrate `f` over `[a, b]`; either end may be infinite.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Quadrature> {
    integrate_with_breaks(f, &[a, b], opts)
}

/// Integrate `f` over `[points[0], points[last]]`, starting the adaptive
/// refinement from the pieces between consecutive break points. Only the
/// outermost points may be infinite.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(f: F, points: &[f64], opts: QuadOptions) -> Result<Quadrature> {
    if points.len() < 2 {
        return Err(Error::Domain("need at least two integration limits".into()));
    }
    if points.iter().any(|p| p.is_nan()) || points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain(format!("integration break points must be sorted: {points:?}")));
    }
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a == b {
            continue;
        }
        let seg = match (a.is_infinite(), b.is_infinite()) {
            (false, false) => kronrod(&f, Map::Finite, a, b)?,
            (false, true) => kronrod(&f, Map::Upper(a), 0.0, 1.0)?,
            (true, false) => kronrod(&f, Map::Lower(b), 0.0, 1.0)?,
            (true, true) => {
                heap.push(kronrod(&f, Map::Upper(0.0), 0.0, 1.0)?);
                kronrod(&f, Map::Lower(0.0), 0.0, 1.0)?
            }
        };
        heap.push(seg);
    }
    let total = |h: &BinaryHeap<Segment>| -> (f64, f64) {
        h.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };
    let (mut value, mut error) = total(&heap);
    while error > opts.abs_tol.max(opts.rel_tol * value.abs()) && heap.len() < opts.max_intervals {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            heap.push(worst);
            break;
        }
        let left = kronrod(&f, worst.map, worst.lo, mid)?;
        let right = kronrod(&f, worst.map, mid, worst.hi)?;
        heap.push(left);
        heap.push(right);
        (value, error) = total(&heap);
    }
    let converged = error <= opts.abs_tol.max(opts.rel_tol * value.abs());
    if !converged {
        log::warn!("quadrature stopped at {} intervals with error {error:.3e} on value {value:.6e}", heap.len());
    }
    Ok(Quadrature { value, error, intervals: heap.len(), converged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| 3.0 * x * x, 0.0, 2.0, QuadOptions::default()).unwrap();
        assert_relative_eq!(q.value, 8.0, max_relative = 1e-14);
        assert!(q.converged);
    }

    #[test]
    fn gaussian_on_half_line() {
        let q = integrate(|x| (-PI * x * x).exp(), 0.0, f64::INFINITY, QuadOptions::default()).unwrap();
        assert_relative_eq!(q.value, 0.5, max_relative = 1e-12);
        let q = integrate(|x| (-PI * x * x).exp(), f64::NEG_INFINITY, f64::INFINITY, QuadOptions::default()).unwrap();
        assert_relative_eq!(q.value, 1.0, max_relative = 1e-12);
        let q = integrate(|x| (-PI * x * x).exp(), f64::NEG_INFINITY, 0.0, QuadOptions::default()).unwrap();
        assert_relative_eq!(q.value, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn power_tail() {
        let q = integrate(|x| x.powi(-3), 1.0, f64::INFINITY, QuadOptions::default()).unwrap();
        assert_relative_eq!(q.value, 0.5, max_relative = 1e-11);
    }

    #[test]
    fn breaks_help_multiscale() {
        let f = |x: f64| (-x * x * 1e4).exp() + (-x * x * 1e-4).exp();
        let q = integrate_with_breaks(f, &[0.0, 0.1, 100.0, f64::INFINITY], QuadOptions::default()).unwrap();
        let exact = 0.5 * PI.sqrt() * (1e-2 + 1e2);
        assert_relative_eq!(q.value, exact, max_relative = 1e-10);
    }

    #[test]
    fn rejects_unsorted_and_nan() {
        assert!(integrate_with_breaks(|x| x, &[1.0, 0.0], QuadOptions::default()).is_err());
        assert!(integrate(|_| f64::NAN, 0.0, 1.0, QuadOptions::default()).is_err());
    }
}
