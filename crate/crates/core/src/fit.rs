//! Ordinary least-squares slope, used for every growth-rate fit.

use crate::error::{Error, Result};

/// Slope of the least-squares line through `(xs[i], ys[i])`.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InsufficientLevels { needed: 2, got: xs.len().min(ys.len()) });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("slope fit needs at least two distinct abscissae".into()));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 0.65 * x - 3.0).collect();
        assert!((ols_slope(&xs, &ys).unwrap() - 0.65).abs() < 1e-14);
        assert!(ols_slope(&[1.0], &[2.0]).is_err());
        assert!(ols_slope(&[1.0, 1.0], &[2.0, 3.0]).is_err());
    }
}
