//! The quadrature remainder computed on the Fourier side: aliasing of the
//! spectrum onto the lattice `σ·ℤ`, `σ = 2π/h`.

use crate::corpus::{SpectralFunction, SQRT_2PI};
use crate::error::{Error, Result};
use crate::sum::{Neumaier, NeumaierComplex};
use num_complex::Complex64;

/// Hard ceiling on automatically chosen truncation indices.
pub const DEFAULT_K_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy)]
pub struct SpectralRemainder {
    pub sigma: f64,
    /// Number of positive frequencies summed.
    pub k: u64,
    /// `-√(2π)·Σ_{1≤|k|≤K} f̂(kσ)`.
    pub value: Complex64,
    /// Rigorous bound on the discarded `|k| > K` mass, when spectral decay
    /// information allows one.
    pub tail_bound: Option<f64>,
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!(
            "lattice spacing must be positive and finite, got {sigma}"
        )));
    }
    Ok(())
}

/// Remainder of the infinite trapezoidal rule, exactly as the aliasing sum
/// `R = -√(2π)·Σ_{1≤|k|≤K} f̂(kσ)`, accumulated in increasing `|k|` with
/// `+k/-k` paired and compensated summation.
///
/// With `k = None` the truncation index comes from [`default_k`].
pub fn remainder_spectral(
    fhat: &SpectralFunction,
    sigma: f64,
    k: Option<u64>,
) -> Result<SpectralRemainder> {
    check_sigma(sigma)?;
    let k = match k {
        Some(k) => k,
        None => default_k(fhat, sigma)?,
    };
    let mut acc = NeumaierComplex::new();
    for j in 1..=k {
        let v = j as f64 * sigma;
        acc.add(fhat.eval(v)? + fhat.eval(-v)?);
    }
    let value = -SQRT_2PI * acc.value();
    let tail_bound = tail_bound(fhat, sigma, k).ok();
    Ok(SpectralRemainder { sigma, k, value, tail_bound })
}

/// Bound on the aliasing mass beyond `K`: `√(2π)·Σ_{|k|>K} |f̂(kσ)|` from the
/// spectral decay envelope.
pub fn tail_bound(fhat: &SpectralFunction, sigma: f64, k: u64) -> Result<f64> {
    check_sigma(sigma)?;
    let decay = fhat.decay()?;
    Ok(2.0 * SQRT_2PI * decay.lattice_tail(sigma, k)?)
}

/// Smallest `K` whose tail bound drops below 1e-12, capped at
/// [`DEFAULT_K_CAP`].
pub fn default_k(fhat: &SpectralFunction, sigma: f64) -> Result<u64> {
    check_sigma(sigma)?;
    let decay = fhat.decay()?;
    let target = 1e-12 / (2.0 * SQRT_2PI);
    let k = match *decay {
        crate::corpus::SpectralDecay::Polynomial { power, scale } => {
            if power <= 1.0 {
                return Err(Error::NonIntegrableDecay(format!(
                    "spectral decay power {power} ≤ 1"
                )));
            }
            // scale·σ^{-p}·K^{1-p}/(p-1) ≤ target
            let base = scale * sigma.powf(-power) / ((power - 1.0) * target);
            base.max(1.0).powf(1.0 / (power - 1.0)).ceil() as u64
        }
        crate::corpus::SpectralDecay::Exponential { rate, scale } => {
            let q = (-rate * sigma).exp();
            // scale·q^{K+1}/(1-q) ≤ target
            let need = (target * (1.0 - q) / scale).max(1e-300);
            ((need.ln() / q.ln()) - 1.0).ceil().max(1.0) as u64
        }
    };
    Ok(k.clamp(1, DEFAULT_K_CAP))
}

/// Aliasing sum specialized to even real spectra: `-2√(2π)·Σ_{k=1}^{K} f̂(kσ)`,
/// one evaluation per frequency. Errors if the sampled spectrum is not even
/// and real (e.g. the transform of an odd function, which is odd and
/// imaginary).
pub fn remainder_even(
    fhat: &SpectralFunction,
    sigma: f64,
    k: Option<u64>,
) -> Result<SpectralRemainder> {
    check_sigma(sigma)?;
    let k = match k {
        Some(k) => k,
        None => default_k(fhat, sigma)?,
    };
    // Spot-check symmetry and realness on the first few lattice points.
    for j in 1..=k.min(4) {
        let v = j as f64 * sigma;
        let plus = fhat.eval(v)?;
        let minus = fhat.eval(-v)?;
        let scale = plus.norm().max(minus.norm()).max(1e-300);
        if plus.im.abs() > 1e-9 * scale.max(1e-9) {
            return Err(Error::NotEvenReal {
                v,
                detail: format!("imaginary part {:.3e}", plus.im),
            });
        }
        if (plus - minus).norm() > 1e-9 * scale.max(1e-9) {
            return Err(Error::NotEvenReal {
                v,
                detail: format!("f̂(v) − f̂(−v) = {:.3e}", (plus - minus).norm()),
            });
        }
    }
    let mut acc = Neumaier::new();
    for j in 1..=k {
        acc.add(fhat.eval(j as f64 * sigma)?.re);
    }
    let value = Complex64::new(-2.0 * SQRT_2PI * acc.value(), 0.0);
    let tail_bound = tail_bound(fhat, sigma, k).ok();
    Ok(SpectralRemainder { sigma, k, value, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::quadrature;

    /// Time-side and Fourier-side remainders must agree for a rapidly
    /// decaying spectrum.
    #[test]
    fn sides_agree_for_gaussian() {
        let g = corpus::gaussian();
        for &h in &[1.0, 0.8] {
            let sigma = 2.0 * std::f64::consts::PI / h;
            let time_side = quadrature::remainder_exact(&g, h, None).unwrap();
            let spec = remainder_spectral(&g.freq, sigma, None).unwrap();
            assert!(spec.value.im.abs() < 1e-15);
            assert!(
                (time_side - spec.value.re).abs() < 1e-14,
                "h={h}: {time_side} vs {}",
                spec.value.re
            );
            assert!(spec.tail_bound.unwrap() < 1e-12);
        }
    }

    #[test]
    fn even_route_matches_general_route() {
        let f = corpus::f2();
        let sigma = 2.0 * std::f64::consts::PI;
        let a = remainder_spectral(&f.freq, sigma, Some(4000)).unwrap();
        let b = remainder_even(&f.freq, sigma, Some(4000)).unwrap();
        assert!((a.value - b.value).norm() < 1e-15);
    }

    #[test]
    fn default_k_honors_tail_target() {
        // Quartic spectral decay reaches the 1e-12 tail target well inside
        // the cap.
        let f = corpus::f2();
        let sigma = 20.0;
        let k = default_k(&f.freq, sigma).unwrap();
        assert!(tail_bound(&f.freq, sigma, k).unwrap() <= 1e-12);
        assert!(k < DEFAULT_K_CAP);
        // Quadratic decay cannot: the cap itself is returned.
        let k2 = default_k(&corpus::f1().freq, std::f64::consts::PI).unwrap();
        assert_eq!(k2, DEFAULT_K_CAP);
    }

    #[test]
    fn odd_spectrum_is_rejected_by_even_route() {
        let shifted = corpus::translate(&corpus::f1(), 1.0);
        let odd = corpus::odd_part(&shifted);
        let err = remainder_even(&odd.freq, 2.0, Some(10)).unwrap_err();
        assert!(matches!(err, Error::NotEvenReal { .. }));
    }

    #[test]
    fn tail_bound_dominates_actual_tail() {
        let f = corpus::f1();
        let sigma = 5.0;
        let near = remainder_spectral(&f.freq, sigma, Some(20_000)).unwrap();
        let far = remainder_spectral(&f.freq, sigma, Some(2_000_000)).unwrap();
        let actual = (near.value - far.value).norm();
        let bound = near.tail_bound.unwrap();
        assert!(actual <= bound, "actual {actual} above bound {bound}");
        assert!(bound < 1e-4 * near.value.norm());
    }
}
