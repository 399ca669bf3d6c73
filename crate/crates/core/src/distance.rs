//! Weighted distance of a spectrum from the band `[-σ, σ]`:
//! `sup_{|v| ≥ σ} |v|^w·|f̂(v)|`, a lower estimate by grid search with
//! refinement, plus an explicit envelope-based slack for the unscanned
//! region beyond the grid.

use crate::corpus::{SpectralDecay, SpectralFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct DistanceQuery {
    /// Exponent `w` of the weight `|v|^w`.
    pub weight_exponent: f64,
    /// Band edge: the supremum ranges over `|v| ≥ σ`.
    pub sigma: f64,
    /// Upper end of the scanned range (default `σ·10⁴`).
    pub v_max: f64,
    /// Log-spaced grid size (default 4096).
    pub grid_n: usize,
    /// Bracket-refinement passes around the best grid point (default 12).
    pub refine_passes: usize,
}

impl DistanceQuery {
    pub fn new(weight_exponent: f64, sigma: f64) -> Self {
        DistanceQuery {
            weight_exponent,
            sigma,
            v_max: sigma * 1e4,
            grid_n: 4096,
            refine_passes: 12,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DistanceResult {
    /// Lower estimate of the weighted supremum.
    pub value: f64,
    /// Frequency at which the estimate was attained.
    pub argmax: f64,
    /// Envelope bound on whatever could live beyond `v_max`.
    pub tail_slack: f64,
}

/// Weighted supremum of `|f̂|` outside the band, for real time-side
/// functions (so `|f̂(-v)| = |f̂(v)|` and positive frequencies suffice).
pub fn dist_bernstein(fhat: &SpectralFunction, q: &DistanceQuery) -> Result<DistanceResult> {
    if !(q.sigma > 0.0) || !q.sigma.is_finite() {
        return Err(Error::Domain(format!("sigma must be positive and finite, got {}", q.sigma)));
    }
    if !(q.v_max > q.sigma) {
        return Err(Error::Domain(format!(
            "v_max = {} must exceed sigma = {}",
            q.v_max, q.sigma
        )));
    }
    if q.grid_n < 16 {
        return Err(Error::Domain(format!("grid must have ≥ 16 points, got {}", q.grid_n)));
    }
    let w = q.weight_exponent;

    // Finiteness gate and tail slack from the decay envelope.
    let tail_slack = match fhat.decay {
        Some(SpectralDecay::Polynomial { power, scale }) => {
            if w > power {
                return Err(Error::UnboundedWeight(format!(
                    "weight exponent {w} exceeds spectral decay power {power}"
                )));
            }
            scale * q.v_max.powf(w - power)
        }
        Some(SpectralDecay::Exponential { rate, scale }) => {
            let v_star = q.v_max.max(w / rate);
            scale * v_star.powf(w) * (-rate * v_star).exp()
        }
        None => {
            if fhat.support_panels.is_some() {
                0.0
            } else {
                return Err(Error::DecayPowerMissing(fhat.name.clone()));
            }
        }
    };

    let weighted = |v: f64| -> Result<f64> { Ok(v.powf(w) * fhat.eval(v)?.norm()) };

    let mut best_v = q.sigma;
    let mut best = weighted(q.sigma)?;
    // Relative tie guard: only move the argmax for a genuine improvement, so
    // plateaus of equal tips resolve to the smallest frequency.
    let consider = |v: f64, best: &mut f64, best_v: &mut f64| -> Result<()> {
        let y = weighted(v)?;
        if y > *best * (1.0 + 1e-12) {
            *best = y;
            *best_v = v;
        }
        Ok(())
    };

    if let Some(panels) = &fhat.support_panels {
        // Compact support: probe each panel (clamped to the band exterior)
        // at its ends, midpoint, and a refining subdivision.
        for &(lo, hi) in panels {
            let lo = lo.max(q.sigma);
            if hi <= lo || lo > q.v_max {
                continue;
            }
            let hi = hi.min(q.v_max);
            let mut a = lo;
            let mut b = hi;
            for _ in 0..q.refine_passes.max(8) {
                let mut local_best = a;
                let mut local_val = -1.0;
                for i in 0..=8 {
                    let v = a + (b - a) * i as f64 / 8.0;
                    let y = weighted(v)?;
                    if y > local_val {
                        local_val = y;
                        local_best = v;
                    }
                }
                consider(local_best, &mut best, &mut best_v)?;
                let width = (b - a) / 4.0;
                a = (local_best - width).max(lo);
                b = (local_best + width).min(hi);
                if b - a < 1e-14 * hi.abs().max(1.0) {
                    break;
                }
            }
        }
        return Ok(DistanceResult { value: best, argmax: best_v, tail_slack });
    }

    // Log-spaced scan of [σ, v_max] with bracketed refinement.
    let n = q.grid_n;
    let ratio = (q.v_max / q.sigma).ln();
    let grid_v = |i: usize| q.sigma * (ratio * i as f64 / (n - 1) as f64).exp();
    let mut best_i = 0usize;
    for i in 0..n {
        let v = grid_v(i);
        let y = weighted(v)?;
        if y > best * (1.0 + 1e-12) {
            best = y;
            best_v = v;
            best_i = i;
        }
    }
    let mut a = grid_v(best_i.saturating_sub(1));
    let mut b = grid_v((best_i + 1).min(n - 1));
    for _ in 0..q.refine_passes {
        if b - a < 1e-14 * b.abs().max(1.0) {
            break;
        }
        let mut local_best = a;
        let mut local_val = -1.0;
        for i in 0..=8 {
            let v = a + (b - a) * i as f64 / 8.0;
            let y = weighted(v)?;
            if y > local_val {
                local_val = y;
                local_best = v;
            }
        }
        consider(local_best, &mut best, &mut best_v)?;
        let width = (b - a) / 4.0;
        a = (local_best - width).max(q.sigma);
        b = (local_best + width).min(q.v_max);
    }

    Ok(DistanceResult { value: best, argmax: best_v, tail_slack })
}
