//! Least-squares slope fits on log–log data, used to measure empirical
//! convergence orders and decay exponents.

use crate::error::{Error, Result};

/// Ordinary least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "need at least 2 paired points, got {}/{}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    if sxx <= 0.0 || !sxx.is_finite() {
        return Err(Error::DegenerateFit("abscissae do not vary".into()));
    }
    Ok(sxy / sxx)
}

/// Slope of `ln y` against `ln x` for strictly positive data — the exponent
/// `p` in a model `y ≈ C·x^p`.
///
/// Pairs whose ordinate falls at or below `floor` are dropped (they carry no
/// exponent information, only rounding noise). Fewer than `min_points`
/// surviving pairs, or a surviving abscissa span of less than half a decade,
/// is a degenerate fit.
pub fn loglog_slope(x: &[f64], y: &[f64], floor: f64, min_points: usize) -> Result<f64> {
    let mut lx = Vec::with_capacity(x.len());
    let mut ly = Vec::with_capacity(y.len());
    for (&xi, &yi) in x.iter().zip(y) {
        if xi > 0.0 && yi > floor && yi.is_finite() {
            lx.push(xi.ln());
            ly.push(yi.ln());
        }
    }
    if lx.len() < min_points.max(2) {
        return Err(Error::DegenerateFit(format!(
            "only {} points above the floor {floor:.1e}",
            lx.len()
        )));
    }
    let span = lx.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - lx.iter().cloned().fold(f64::INFINITY, f64::min);
    if span < 0.5 * std::f64::consts::LN_10 {
        return Err(Error::DegenerateFit(format!(
            "abscissa span {:.2} decades is too narrow",
            span / std::f64::consts::LN_10
        )));
    }
    slope(&lx, &ly)
}
