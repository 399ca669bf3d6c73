//! Infinite trapezoidal rule on the lattice `h·ℤ` and its exact remainder
//! against the integral over the line.

use crate::corpus::{lattice_sum, FunctionPair, RealFunction};
use crate::error::{Error, Result};

/// Result of a truncated lattice sum `S = h·Σ_{|k|≤N} f(hk)`.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub h: f64,
    pub n: u64,
    /// The truncated sum itself.
    pub value: f64,
    /// Rigorous bound on the discarded mass `h·Σ_{|k|>N} |f(hk)|`, when the
    /// decay hint allows one.
    pub truncation_bound: Option<f64>,
    /// `value − ∫f`, when the exact integral is registered.
    pub error: Option<f64>,
}

/// `h·Σ_{|k|≤N} f(hk)` with compensated summation, pairing `k` with `-k`.
pub fn trapezoidal_sum(f: &RealFunction, h: f64, n: u64) -> Result<QuadratureResult> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("step must be positive and finite, got {h}")));
    }
    let value = lattice_sum(f, h, n)?;
    let truncation_bound = truncation_bound(f, h, n).ok();
    let error = f.exact_integral.map(|i| value - i);
    Ok(QuadratureResult { h, n, value, truncation_bound, error })
}

/// Bound on the discarded tail `h·Σ_{|k|>N} |f(hk)|` from the decay hint.
///
/// For a decreasing envelope the one-sided lattice tail is dominated by the
/// envelope integral from `h·N`, so the bound is `2·∫_{hN}^∞ envelope`.
/// Requires `h·N` at or beyond the hint's validity radius.
pub fn truncation_bound(f: &RealFunction, h: f64, n: u64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("step must be positive and finite, got {h}")));
    }
    let hint = f.decay()?;
    Ok(2.0 * hint.tail_mass(h * n as f64)?)
}

/// Default truncation index: enough lattice points that the discarded tail
/// is below 1e-15 of the envelope mass.
pub fn default_n(f: &RealFunction, h: f64) -> Result<u64> {
    let hint = f.decay()?;
    let r = hint.radius_for_tail_mass(1e-15)?;
    Ok((r / h).ceil() as u64 + 1)
}

/// Exact quadrature remainder `R = ∫f − h·Σ_{|k|≤N} f(hk)` for a function
/// with a registered integral. With `n = None` the default truncation is
/// used.
pub fn remainder_exact(pair: &FunctionPair, h: f64, n: Option<u64>) -> Result<f64> {
    let integral = pair.time.exact_integral.ok_or_else(|| {
        Error::Domain(format!("no exact integral registered on `{}`", pair.time.name))
    })?;
    let n = match n {
        Some(n) => n,
        None => default_n(&pair.time, h)?,
    };
    let s = trapezoidal_sum(&pair.time, h, n)?;
    Ok(integral - s.value)
}
