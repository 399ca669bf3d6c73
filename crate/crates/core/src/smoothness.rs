//! Finite differences and integral moduli of smoothness, plus the pointwise
//! spectrum bound they imply.

use crate::corpus::{RealFunction, SQRT_2PI};
use crate::error::{Error, Result};
use crate::fit;
use crate::integrate;

/// Binomial coefficients of one row, exact in f64 for the orders used here.
fn binomials(r: u32) -> Vec<f64> {
    let mut row = vec![1.0f64];
    for _ in 0..r {
        let mut next = vec![1.0];
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1.0);
        row = next;
    }
    row
}

fn check_order(r: u32) -> Result<()> {
    if r < 1 || r > 6 {
        return Err(Error::Domain(format!("difference order must be in 1..=6, got {r}")));
    }
    Ok(())
}

/// Forward difference `Δ_h^r f(x) = Σ_k (-1)^{r-k} C(r,k) f(x+kh)`.
pub fn forward_difference(f: &RealFunction, r: u32, h: f64, x: f64) -> Result<f64> {
    check_order(r)?;
    let coeffs = binomials(r);
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate() {
        let sign = if (r as usize - k) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * c * f.eval_checked(x + k as f64 * h)?;
    }
    Ok(acc)
}

/// Central (symmetric) difference of even order `2j`:
/// `Σ_{k=0}^{2j} (-1)^k C(2j,k) f(x+(j-k)u)`.
pub fn central_difference(f: &RealFunction, two_j: u32, u: f64, x: f64) -> Result<f64> {
    if two_j < 2 || two_j % 2 != 0 || two_j > 12 {
        return Err(Error::Domain(format!(
            "central difference order must be even and in 2..=12, got {two_j}"
        )));
    }
    let j = (two_j / 2) as i64;
    let coeffs = binomials(two_j);
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * c * f.eval_checked(x + (j - k as i64) as f64 * u)?;
    }
    Ok(acc)
}

/// `‖Δ_h^r f‖₁` over the decay-implied domain, with breakpoints at the
/// difference offsets so kinks of `f` at the origin stay on panel boundaries.
pub fn difference_l1(f: &RealFunction, r: u32, h: f64, tol: f64) -> Result<f64> {
    check_order(r)?;
    if !(h > 0.0) {
        return Err(Error::Domain(format!("difference step must be positive, got {h}")));
    }
    let hint = f.decay()?;
    let spread = r as f64 * h;
    let radius = hint.radius_for_tail_mass(tol / (4.0 * 2.0f64.powi(r as i32)))?.max(1.0);

    let mut breaks = vec![-radius - spread];
    for k in (0..=r).rev() {
        breaks.push(-(k as f64) * h);
    }
    breaks.push(0.5 * radius);
    breaks.push(radius);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let g = f.clone();
    let coeffs = binomials(r);
    let integrand = move |x: f64| {
        let mut acc = 0.0;
        for (k, &c) in coeffs.iter().enumerate() {
            let sign = if (r as usize - k) % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * c * g.eval(x + k as f64 * h);
        }
        acc.abs()
    };
    let est = integrate::adaptive_breaks(&integrand, &breaks, tol / 2.0, 0.0, 24_000)?;
    Ok(est.value)
}

/// Integral modulus of smoothness `ω_r(f; δ) = sup_{0<h≤δ} ‖Δ_h^r f‖₁`,
/// estimated from below by a grid scan over `h` followed by one refinement
/// pass around the best grid point. `tol` is the absolute quadrature
/// tolerance per L¹ evaluation.
pub fn modulus(f: &RealFunction, r: u32, delta: f64, grid_n: usize, tol: f64) -> Result<f64> {
    check_order(r)?;
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!("delta must be positive and finite, got {delta}")));
    }
    if grid_n < 8 {
        return Err(Error::Domain(format!("modulus grid must have ≥ 8 points, got {grid_n}")));
    }

    let mut best = (0.0f64, delta);
    let at = |h: f64, best: &mut (f64, f64)| -> Result<()> {
        let v = difference_l1(f, r, h, tol)?;
        if v > best.0 {
            *best = (v, h);
        }
        Ok(())
    };
    for i in 1..=grid_n {
        at(delta * i as f64 / grid_n as f64, &mut best)?;
    }
    // Refine around the best grid point.
    let step = delta / grid_n as f64;
    let lo = (best.1 - step).max(step * 0.25);
    let hi = (best.1 + step).min(delta);
    for i in 0..8 {
        at(lo + (hi - lo) * i as f64 / 7.0, &mut best)?;
    }
    Ok(best.0)
}

/// Moduli of one order sampled over a sorted grid of increments.
///
/// The sampled values inherit two structural facts about `ω_r`: they are
/// nondecreasing in `δ` and never exceed `2^r·‖f‖₁`.
#[derive(Debug, Clone)]
pub struct ModulusProfile {
    pub r: u32,
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
}

impl ModulusProfile {
    pub fn measure(
        f: &RealFunction,
        r: u32,
        deltas: &[f64],
        grid_n: usize,
        tol: f64,
    ) -> Result<Self> {
        check_order(r)?;
        if deltas.is_empty() {
            return Err(Error::Domain("profile needs at least one delta".into()));
        }
        if deltas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("profile deltas must be strictly increasing".into()));
        }
        let mut values = Vec::with_capacity(deltas.len());
        for &d in deltas {
            values.push(modulus(f, r, d, grid_n, tol)?);
        }
        Ok(ModulusProfile { r, deltas: deltas.to_vec(), values })
    }

    /// Monotonicity in `δ`, up to measurement slack.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0] - slack)
    }

    /// The `2^r·‖f‖₁` ceiling, given `‖f‖₁`.
    pub fn is_bounded_by_norm(&self, l1: f64, slack: f64) -> bool {
        let cap = 2.0f64.powi(self.r as i32) * l1 + slack;
        self.values.iter().all(|&v| v <= cap)
    }
}

/// Spectrum bound from smoothness: `|f̂(v)| ≤ (2π)^{-1/2}·2^{-r}·ω_r(f; π/|v|)`.
pub fn fourier_bound_from_modulus(
    f: &RealFunction,
    r: u32,
    v: f64,
    grid_n: usize,
    tol: f64,
) -> Result<f64> {
    if v == 0.0 || !v.is_finite() {
        return Err(Error::Domain(format!("frequency must be nonzero and finite, got {v}")));
    }
    let w = modulus(f, r, std::f64::consts::PI / v.abs(), grid_n, tol)?;
    Ok(w / (SQRT_2PI * 2.0f64.powi(r as i32)))
}

/// Empirical smoothness order: the log–log slope of `ω_r(f; δ)` over the
/// given `δ` values, capped at `r` (the modulus saturates at order `r`).
pub fn lipschitz_order_estimate(f: &RealFunction, r: u32, deltas: &[f64]) -> Result<f64> {
    check_order(r)?;
    if deltas.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need ≥ 3 delta values, got {}",
            deltas.len()
        )));
    }
    let profile = ModulusProfile::measure(f, r, deltas, 8, 1e-10)?;
    let slope = fit::loglog_slope(&profile.deltas, &profile.values, 1e-14, 3)?;
    Ok(slope.min(r as f64))
}
