//! Numerical integration engine.
//!
//! Three building blocks cover every integral in the crate:
//!
//!   * [`adaptive`] — globally adaptive Gauss–Kronrod 15-point quadrature on a
//!     finite interval, with breakpoint support via [`adaptive_breaks`];
//!   * [`alternating_series`] — iterated-averaging (Euler-type) acceleration
//!     for alternating sums, used to resolve slowly decaying oscillatory
//!     tails from their half-period panel decomposition;
//!   * [`fourier_cos_integral`] / [`powerlaw_tail`] — `∫ w(v)·cos(vt) dv`
//!     over an unbounded range, by half-period panels plus acceleration when
//!     `t ≠ 0`, and by a fitted power-law tail model when there is no
//!     oscillation to exploit.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// A numerical value together with an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteSample { x, value: y })
        }
    };

    let fc = eval(center)?;
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (1.0f64).min((200.0 * error / resasc).powf(1.5));
    }
    // Roundoff floor: the estimate cannot be trusted below ~50 ulps of the
    // absolute mass on the panel.
    error = error.max(50.0 * f64::EPSILON * resabs);
    Ok(Panel { a, b, value, error })
}

/// Globally adaptive quadrature of `f` over `[a, b]`.
///
/// Subdivides until the summed panel error estimate drops below
/// `max(abs_tol, rel_tol·|value|)` or `max_panels` panels exist. Panels too
/// narrow to split are frozen at their current estimate (floating-point
/// floor). Exhausting the budget while still two orders of magnitude away
/// from the target is an error.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let mut heap = BinaryHeap::new();
    let first = gk15(f, a, b)?;
    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut frozen_error = 0.0f64;
    heap.push(first);
    let mut panels = 1usize;

    loop {
        let target = abs_tol.max(rel_tol * total_value.abs());
        if total_error + frozen_error <= target || heap.is_empty() {
            return Ok(Estimate { value: total_value, error: total_error + frozen_error });
        }
        if panels >= max_panels {
            let achieved = total_error + frozen_error;
            if achieved > 100.0 * target.max(1e-300) && achieved > 1e-13 * total_value.abs() {
                return Err(Error::QuadratureBudget { achieved, requested: target });
            }
            return Ok(Estimate { value: total_value, error: achieved });
        }
        let worst = heap.pop().unwrap();
        let mid = 0.5 * (worst.a + worst.b);
        let width = worst.b - worst.a;
        if !(width.abs() > 16.0 * f64::EPSILON * (worst.a.abs() + worst.b.abs() + 1e-300))
            || mid <= worst.a.min(worst.b)
            || mid >= worst.a.max(worst.b)
        {
            // Cannot be split further in f64; keep its error as a floor.
            frozen_error += worst.error;
            total_error -= worst.error;
            continue;
        }
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        panels += 1;
    }
}

/// Adaptive quadrature over a piecewise domain described by an ascending
/// breakpoint list `[x0, x1, ..., xn]`; integrates each `[x_i, x_{i+1}]`
/// separately so kinks at the breakpoints cost nothing.
pub fn adaptive_breaks<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Estimate> {
    if breaks.len() < 2 {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let segs = breaks.len() - 1;
    let mut value = crate::sum::Neumaier::new();
    let mut error = 0.0;
    for w in breaks.windows(2) {
        let est = adaptive(
            f,
            w[0],
            w[1],
            abs_tol / segs as f64,
            rel_tol,
            (max_panels / segs).max(32),
        )?;
        value.add(est.value);
        error += est.error;
    }
    Ok(Estimate { value: value.value(), error })
}

/// Sum of a (typically alternating) series accelerated by iterated averaging
/// of the partial sums. `term(i)` supplies the `i`-th term; the routine stops
/// once consecutive deepest averages agree to `tol` (absolute).
///
/// For alternating sequences whose magnitudes decay smoothly this converges
/// geometrically even when the raw series decays only like a small power.
pub fn alternating_series<T: FnMut(usize) -> Result<f64>>(
    mut term: T,
    tol: f64,
    max_terms: usize,
) -> Result<Estimate> {
    const MAX_DEPTH: usize = 24;
    let mut row: Vec<f64> = Vec::with_capacity(MAX_DEPTH + 1);
    let mut partial = 0.0f64;
    let mut last_estimate = f64::NAN;

    for i in 0..max_terms {
        partial += term(i)?;
        let depth = row.len().min(MAX_DEPTH);
        let mut new_row = Vec::with_capacity(depth + 1);
        new_row.push(partial);
        for d in 0..depth {
            let v = 0.5 * (new_row[d] + row[d]);
            new_row.push(v);
        }
        let estimate = *new_row.last().unwrap();
        row = new_row;
        if i >= 3 {
            let change = (estimate - last_estimate).abs();
            if change <= tol {
                return Ok(Estimate { value: estimate, error: change.max(f64::EPSILON * estimate.abs()) });
            }
        }
        last_estimate = estimate;
    }
    Err(Error::NoConvergence {
        detail: format!("alternating series not settled after {max_terms} terms"),
        residual: (row.last().copied().unwrap_or(f64::NAN) - last_estimate).abs(),
    })
}

/// `∫_{v0}^{∞} w(v)·cos(v·t) dv` for `t ≠ 0`.
///
/// Splits the range at the zeros of the cosine: a head integral up to the
/// first zero past `v0`, then one panel per half period. The panel integrals
/// alternate in sign, so the infinite tail is summed by
/// [`alternating_series`] — no explicit truncation of the range is needed,
/// and the cost is independent of how slowly `w` decays.
pub fn fourier_cos_integral<F: Fn(f64) -> f64>(
    w: &F,
    t: f64,
    v0: f64,
    tol: f64,
) -> Result<Estimate> {
    let tau = t.abs();
    assert!(tau > 0.0, "fourier_cos_integral requires t != 0");
    let half_period = std::f64::consts::PI / tau;
    // Zeros of cos(v·tau) sit at v = (m + 1/2)·π/tau.
    let m0 = ((v0 / half_period) - 0.5).ceil().max(0.0);
    let z0 = (m0 + 0.5) * half_period;

    let g = |v: f64| w(v) * (v * tau).cos();
    // For small t the first zero sits far out; ladder the head by decades so
    // the adaptive estimator cannot false-converge on a panel whose sample
    // points all miss the O(1)-scale structure of `w`.
    let mut head_breaks = vec![v0, z0];
    if v0 < 1.0 && z0 > 1.0 {
        head_breaks.push(1.0);
    }
    let mut x = v0.max(1.0) * 10.0;
    while x < z0 {
        head_breaks.push(x);
        x *= 10.0;
    }
    head_breaks.sort_by(f64::total_cmp);
    head_breaks.dedup();
    let head = adaptive_breaks(
        &g,
        &head_breaks,
        0.25 * tol,
        0.0,
        (head_breaks.len() * 96).max(512),
    )?;

    let tail = alternating_series(
        |i| {
            let a = (m0 + i as f64 + 0.5) * half_period;
            let b = a + half_period;
            adaptive(&g, a, b, tol / 64.0, 0.0, 64).map(|e| e.value)
        },
        0.25 * tol,
        2000,
    )?;

    Ok(Estimate { value: head.value + tail.value, error: head.error + tail.error })
}

/// Tail `∫_{V}^{∞} w(v) dv` of a signed, asymptotically power-like integrand,
/// from a locally fitted exponent: `q ≈ log2(w(V)/w(2V))`, tail
/// `≈ w(V)·V/(q−1)`. The spread between the fits on `[V,2V]` and `[2V,4V]`
/// serves as the model-error estimate.
pub fn powerlaw_tail<F: Fn(f64) -> f64>(w: &F, v: f64) -> Result<Estimate> {
    let w0 = w(v);
    let w1 = w(2.0 * v);
    let w2 = w(4.0 * v);
    if w0 == 0.0 && w1 == 0.0 && w2 == 0.0 {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    if !(w0.is_finite() && w1.is_finite() && w2.is_finite()) {
        return Err(Error::NonFiniteSample { x: v, value: w0 });
    }
    if w0 == 0.0 || w1 == 0.0 || w0.signum() != w1.signum() || w1.signum() != w2.signum() {
        return Err(Error::NoConvergence {
            detail: "tail integrand is not sign-stable power-like".into(),
            residual: f64::NAN,
        });
    }
    let q1 = (w0 / w1).abs().ln() / std::f64::consts::LN_2;
    let q2 = (w1 / w2).abs().ln() / std::f64::consts::LN_2;
    if q1 <= 1.05 || q2 <= 1.05 {
        return Err(Error::NonIntegrableDecay(format!(
            "fitted tail exponent {:.3}/{:.3} too close to 1",
            q1, q2
        )));
    }
    if (q1 - q2).abs() > 0.25 * q1.abs().max(1.0) {
        return Err(Error::NoConvergence {
            detail: format!("tail not power-like: fitted exponents {q1:.3} vs {q2:.3}"),
            residual: (q1 - q2).abs(),
        });
    }
    let t1 = w0 * v / (q1 - 1.0);
    let t2 = w0 * v / (q2 - 1.0);
    Ok(Estimate { value: t1, error: 2.0 * (t1 - t2).abs() + 1e-16 * t1.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn adaptive_polynomial_is_near_exact() {
        let est = adaptive(&|x: f64| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-14, 0.0, 64).unwrap();
        // ∫ x³−2x+1 over [−1,3] = [x⁴/4 − x² + x] = (81/4−9+3) − (1/4−1−1) = 16
        assert!((est.value - 16.0).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_kink_with_breakpoint() {
        let f = |x: f64| (1.0 - x.abs()).max(0.0);
        let est = adaptive_breaks(&f, &[-2.0, 0.0, 2.0], 1e-13, 0.0, 256).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn adaptive_rejects_nan() {
        let err = adaptive(&|x: f64| (x - 0.5).ln(), 0.0, 1.0, 1e-10, 0.0, 128).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSample { .. }));
    }

    #[test]
    fn alternating_series_log2() {
        // 1 − 1/2 + 1/3 − ... = ln 2, terms decay like 1/n.
        let est = alternating_series(
            |i| Ok(if i % 2 == 0 { 1.0 } else { -1.0 } / (i + 1) as f64),
            1e-13,
            200,
        )
        .unwrap();
        assert!((est.value - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn cos_integral_matches_exponential_closed_form() {
        // ∫_0^∞ e^{−v} cos(vt) dv = 1/(1+t²)
        for &t in &[0.7, 2.0, 11.0] {
            let est = fourier_cos_integral(&|v: f64| (-v).exp(), t, 0.0, 1e-12).unwrap();
            let exact = 1.0 / (1.0 + t * t);
            assert!(
                (est.value - exact).abs() < 5e-12,
                "t={t}: {} vs {exact}",
                est.value
            );
        }
    }

    #[test]
    fn cos_integral_slow_decay() {
        // ∫_0^∞ cos(vt)/(1+v²) dv = (π/2)e^{−t}; the integrand decays only
        // like v^{−2}, so this exercises the acceleration.
        for &t in &[0.5, 1.0, 3.0] {
            let est = fourier_cos_integral(&|v: f64| 1.0 / (1.0 + v * v), t, 0.0, 1e-12).unwrap();
            let exact = 0.5 * PI * (-t).exp();
            assert!(
                (est.value - exact).abs() < 1e-10,
                "t={t}: {} vs {exact}",
                est.value
            );
        }
    }

    #[test]
    fn powerlaw_tail_exact_on_pure_power() {
        // ∫_V^∞ v^{−3} dv = V^{−2}/2
        let est = powerlaw_tail(&|v: f64| v.powi(-3), 50.0).unwrap();
        assert!((est.value - 0.5 * 50.0f64.powi(-2)).abs() < 1e-12);
    }

    #[test]
    fn powerlaw_tail_rejects_divergent() {
        let err = powerlaw_tail(&|v: f64| 1.0 / v, 10.0).unwrap_err();
        assert!(matches!(err, Error::NonIntegrableDecay(_)));
    }

    #[test]
    fn powerlaw_tail_signed() {
        let est = powerlaw_tail(&|v: f64| -2.0 * v.powi(-3), 40.0).unwrap();
        assert!((est.value + 40.0f64.powi(-2)).abs() < 1e-12);
    }
}
