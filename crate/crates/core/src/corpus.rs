//! Function corpus: time-side integrands paired with their Fourier
//! transforms, plus decay metadata that drives truncation decisions
//! everywhere else in the crate.
//!
//! Transform convention: `f̂(v) = (2π)^{-1/2} ∫ f(u) e^{-iuv} du`.

use crate::error::{Error, Result};
use crate::integrate;
use crate::sum::Neumaier;
use num_complex::Complex64;
use std::sync::Arc;

pub const SQRT_2PI: f64 = 2.506_628_274_631_000_2;

pub type RealEval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpectralEval = Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>;

/// Envelope information for a function on the time side: `|f(x)| ≤ envelope(x)`
/// for `|x| ≥ radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayHint {
    /// `|f(x)| ≤ scale·e^{-rate·|x|}` beyond `radius`.
    Exponential { rate: f64, scale: f64, radius: f64 },
    /// `|f(x)| ≤ scale·|x|^{-power}` beyond `radius`.
    Polynomial { power: f64, scale: f64, radius: f64 },
    /// `f(x) = 0` for `|x| > radius`, and `|f| ≤ bound` inside.
    Compact { radius: f64, bound: f64 },
}

impl DecayHint {
    pub fn radius(&self) -> f64 {
        match *self {
            DecayHint::Exponential { radius, .. }
            | DecayHint::Polynomial { radius, .. }
            | DecayHint::Compact { radius, .. } => radius,
        }
    }

    /// Envelope value at `|x| = x` (only meaningful for `x ≥ radius`).
    pub fn envelope(&self, x: f64) -> f64 {
        match *self {
            DecayHint::Exponential { rate, scale, .. } => scale * (-rate * x).exp(),
            DecayHint::Polynomial { power, scale, .. } => scale * x.powf(-power),
            DecayHint::Compact { radius, bound } => {
                if x.abs() > radius {
                    0.0
                } else {
                    bound
                }
            }
        }
    }

    /// Sampling cutoff: beyond this radius the function is smaller than `tol`.
    pub fn truncation_radius(&self, tol: f64) -> Result<f64> {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        Ok(match *self {
            DecayHint::Exponential { rate, scale, radius } => {
                ((scale / tol).max(1.0).ln() / rate + 5.0).max(radius)
            }
            DecayHint::Polynomial { power, scale, radius } => {
                if power <= 1.0 {
                    return Err(Error::NonIntegrableDecay(format!(
                        "polynomial decay power {power} ≤ 1"
                    )));
                }
                ((scale / tol).max(1.0).powf(1.0 / (power - 1.0))).max(radius)
            }
            DecayHint::Compact { radius, .. } => radius,
        })
    }

    /// One-sided envelope mass `∫_{x0}^{∞} envelope(x) dx`, for `x0 ≥ radius`.
    pub fn tail_mass(&self, x0: f64) -> Result<f64> {
        match *self {
            DecayHint::Exponential { rate, scale, radius } => {
                if x0 < radius {
                    return Err(Error::Domain(format!(
                        "tail start {x0} inside hint radius {radius}"
                    )));
                }
                Ok(scale * (-rate * x0).exp() / rate)
            }
            DecayHint::Polynomial { power, scale, radius } => {
                if power <= 1.0 {
                    return Err(Error::NonIntegrableDecay(format!(
                        "polynomial decay power {power} ≤ 1"
                    )));
                }
                if x0 < radius {
                    return Err(Error::Domain(format!(
                        "tail start {x0} inside hint radius {radius}"
                    )));
                }
                Ok(scale * x0.powf(1.0 - power) / (power - 1.0))
            }
            DecayHint::Compact { radius, bound } => {
                Ok(if x0 >= radius { 0.0 } else { bound * (radius - x0) })
            }
        }
    }

    /// Smallest `R ≥ radius` with `tail_mass(R) ≤ eps`.
    pub fn radius_for_tail_mass(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0) {
            return Err(Error::Domain(format!("tail budget must be positive, got {eps}")));
        }
        Ok(match *self {
            DecayHint::Exponential { rate, scale, radius } => {
                ((scale / (rate * eps)).max(1.0).ln() / rate).max(radius)
            }
            DecayHint::Polynomial { power, scale, radius } => {
                if power <= 1.0 {
                    return Err(Error::NonIntegrableDecay(format!(
                        "polynomial decay power {power} ≤ 1"
                    )));
                }
                (scale / ((power - 1.0) * eps)).max(1.0).powf(1.0 / (power - 1.0)).max(radius)
            }
            DecayHint::Compact { radius, .. } => radius,
        })
    }
}

/// A real-valued function of one real variable with optional decay metadata
/// and, when known, its exact integral over the line.
#[derive(Clone)]
pub struct RealFunction {
    pub name: String,
    eval: RealEval,
    pub decay: Option<DecayHint>,
    pub exact_integral: Option<f64>,
}

impl RealFunction {
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RealFunction {
            name: name.into(),
            eval: Arc::new(eval),
            decay: None,
            exact_integral: None,
        }
    }

    pub fn with_decay(mut self, hint: DecayHint) -> Self {
        self.decay = Some(hint);
        self
    }

    pub fn with_integral(mut self, value: f64) -> Self {
        self.exact_integral = Some(value);
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn eval_checked(&self, x: f64) -> Result<f64> {
        let y = self.eval(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteSample { x, value: y })
        }
    }

    pub fn decay(&self) -> Result<&DecayHint> {
        self.decay
            .as_ref()
            .ok_or_else(|| Error::DecayHintMissing(self.name.clone()))
    }
}

impl std::fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RealFunction")
            .field("name", &self.name)
            .field("decay", &self.decay)
            .field("exact_integral", &self.exact_integral)
            .finish()
    }
}

/// How a spectrum evaluator was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralKind {
    /// Closed form; trustworthy to roundoff.
    Analytic,
    /// Computed by numerical transform with the given absolute tolerance.
    Numeric { tol: f64 },
}

/// Envelope for the spectrum: `|f̂(v)| ≤ envelope(|v|)` for all `v ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralDecay {
    /// `|f̂(v)| ≤ scale·|v|^{-power}`.
    Polynomial { power: f64, scale: f64 },
    /// `|f̂(v)| ≤ scale·e^{-rate·|v|}`.
    Exponential { rate: f64, scale: f64 },
}

impl SpectralDecay {
    pub fn envelope(&self, v: f64) -> f64 {
        match *self {
            SpectralDecay::Polynomial { power, scale } => scale * v.abs().powf(-power),
            SpectralDecay::Exponential { rate, scale } => scale * (-rate * v.abs()).exp(),
        }
    }

    /// Upper bound on `Σ_{k>K} envelope(k·σ)` for `σ > 0`.
    pub fn lattice_tail(&self, sigma: f64, k: u64) -> Result<f64> {
        let kf = k as f64;
        match *self {
            SpectralDecay::Polynomial { power, scale } => {
                if power <= 1.0 {
                    return Err(Error::NonIntegrableDecay(format!(
                        "spectral decay power {power} ≤ 1"
                    )));
                }
                // Σ_{k>K} k^{-p} ≤ K^{1-p}/(p-1)
                Ok(scale * sigma.powf(-power) * kf.powf(1.0 - power) / (power - 1.0))
            }
            SpectralDecay::Exponential { rate, scale } => {
                let q = (-rate * sigma).exp();
                Ok(scale * q.powf(kf + 1.0) / (1.0 - q))
            }
        }
    }
}

/// A (possibly complex-valued) spectrum evaluator.
#[derive(Clone)]
pub struct SpectralFunction {
    pub name: String,
    eval: SpectralEval,
    pub kind: SpectralKind,
    pub decay: Option<SpectralDecay>,
    /// For compactly supported spectra: the intervals of positive frequency
    /// carrying the support (mirrored to negative frequencies).
    pub support_panels: Option<Vec<(f64, f64)>>,
}

impl SpectralFunction {
    pub fn analytic(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SpectralFunction {
            name: name.into(),
            eval: Arc::new(move |v| Ok(Complex64::new(eval(v), 0.0))),
            kind: SpectralKind::Analytic,
            decay: None,
            support_panels: None,
        }
    }

    pub fn analytic_complex(
        name: impl Into<String>,
        eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        SpectralFunction {
            name: name.into(),
            eval: Arc::new(move |v| Ok(eval(v))),
            kind: SpectralKind::Analytic,
            decay: None,
            support_panels: None,
        }
    }

    pub fn numeric(
        name: impl Into<String>,
        tol: f64,
        eval: impl Fn(f64) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        SpectralFunction {
            name: name.into(),
            eval: Arc::new(eval),
            kind: SpectralKind::Numeric { tol },
            decay: None,
            support_panels: None,
        }
    }

    pub fn with_decay(mut self, decay: SpectralDecay) -> Self {
        self.decay = Some(decay);
        self
    }

    pub fn with_support_panels(mut self, panels: Vec<(f64, f64)>) -> Self {
        self.support_panels = Some(panels);
        self
    }

    #[inline]
    pub fn eval(&self, v: f64) -> Result<Complex64> {
        (self.eval)(v)
    }

    pub fn decay(&self) -> Result<&SpectralDecay> {
        self.decay
            .as_ref()
            .ok_or_else(|| Error::DecayPowerMissing(self.name.clone()))
    }
}

impl std::fmt::Debug for SpectralFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralFunction")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("decay", &self.decay)
            .finish()
    }
}

/// A function together with its transform and any registered derivatives
/// (index `i` holds the derivative of order `i+1`).
#[derive(Clone, Debug)]
pub struct FunctionPair {
    pub time: RealFunction,
    pub freq: SpectralFunction,
    derivatives: Vec<RealFunction>,
}

impl FunctionPair {
    pub fn new(time: RealFunction, freq: SpectralFunction) -> Self {
        FunctionPair { time, freq, derivatives: Vec::new() }
    }

    pub fn with_derivatives(mut self, derivatives: Vec<RealFunction>) -> Self {
        self.derivatives = derivatives;
        self
    }

    /// Registered derivative of the given order (`0` returns the function
    /// itself).
    pub fn derivative(&self, order: u32) -> Result<&RealFunction> {
        if order == 0 {
            return Ok(&self.time);
        }
        self.derivatives
            .get(order as usize - 1)
            .ok_or_else(|| Error::DerivativeUnavailable {
                order,
                name: self.time.name.clone(),
            })
    }

    pub fn max_derivative_order(&self) -> u32 {
        self.derivatives.len() as u32
    }
}

// ---------------------------------------------------------------------------
// Built-in corpus
// ---------------------------------------------------------------------------

/// `f(x) = e^{-|x|}`, transform `√2/(√π·(1+v²))`, integral 2.
pub fn f1() -> FunctionPair {
    let c = std::f64::consts::SQRT_2 / std::f64::consts::PI.sqrt();
    let time = RealFunction::new("f1", |x: f64| (-x.abs()).exp())
        .with_decay(DecayHint::Exponential { rate: 1.0, scale: 1.0, radius: 0.0 })
        .with_integral(2.0);
    let freq = SpectralFunction::analytic("f1_hat", move |v: f64| c / (1.0 + v * v))
        .with_decay(SpectralDecay::Polynomial { power: 2.0, scale: c });
    let d1 = RealFunction::new("f1'", |x: f64| -x.signum() * (-x.abs()).exp())
        .with_decay(DecayHint::Exponential { rate: 1.0, scale: 1.0, radius: 0.0 });
    FunctionPair::new(time, freq).with_derivatives(vec![d1])
}

/// `f(x) = x²e^{-|x|}`, transform `2√2(1-3v²)/(√π(1+v²)³)`, integral 4.
pub fn f2() -> FunctionPair {
    let c = 2.0 * std::f64::consts::SQRT_2 / std::f64::consts::PI.sqrt();
    let time = RealFunction::new("f2", |x: f64| x * x * (-x.abs()).exp())
        .with_decay(DecayHint::Exponential { rate: 0.9, scale: 55.0, radius: 0.0 })
        .with_integral(4.0);
    let freq = SpectralFunction::analytic("f2_hat", move |v: f64| {
        let d = 1.0 + v * v;
        c * (1.0 - 3.0 * v * v) / (d * d * d)
    })
    .with_decay(SpectralDecay::Polynomial { power: 4.0, scale: 3.0 * c });
    let d1 = RealFunction::new("f2'", |x: f64| {
        x.signum() * (2.0 * x.abs() - x * x) * (-x.abs()).exp()
    })
    .with_decay(DecayHint::Exponential { rate: 0.9, scale: 65.0, radius: 0.0 });
    let d2 = RealFunction::new("f2''", |x: f64| {
        (2.0 - 4.0 * x.abs() + x * x) * (-x.abs()).exp()
    })
    .with_decay(DecayHint::Exponential { rate: 0.9, scale: 70.0, radius: 0.0 });
    let d3 = RealFunction::new("f2'''", |x: f64| {
        x.signum() * (-6.0 + 6.0 * x.abs() - x * x) * (-x.abs()).exp()
    })
    .with_decay(DecayHint::Exponential { rate: 0.9, scale: 90.0, radius: 0.0 });
    FunctionPair::new(time, freq).with_derivatives(vec![d1, d2, d3])
}

/// `f(x) = 1/(1+x⁶)`, transform computed numerically, integral 2π/3.
pub fn f3() -> FunctionPair {
    let time = RealFunction::new("f3", |x: f64| 1.0 / (1.0 + x.powi(6)))
        .with_decay(DecayHint::Polynomial { power: 6.0, scale: 1.0, radius: 0.0 })
        .with_integral(2.0 * std::f64::consts::PI / 3.0);
    let tol = 1e-12;
    let inner = time.clone();
    let freq = SpectralFunction::numeric("f3_hat", tol, move |v| numeric_fourier(&inner, v, tol))
        .with_decay(SpectralDecay::Exponential { rate: 0.5, scale: 2.0 });
    FunctionPair::new(time, freq)
}

/// `f(x) = e^{-x²}`, transform `e^{-v²/4}/√2`, integral √π.
pub fn gaussian() -> FunctionPair {
    let time = RealFunction::new("gaussian", |x: f64| (-x * x).exp())
        .with_decay(DecayHint::Exponential { rate: 2.0, scale: 54.6, radius: 0.0 })
        .with_integral(std::f64::consts::PI.sqrt());
    let freq = SpectralFunction::analytic("gaussian_hat", |v: f64| {
        (-0.25 * v * v).exp() / std::f64::consts::SQRT_2
    })
    .with_decay(SpectralDecay::Exponential { rate: 1.0, scale: 2.0 });
    let d1 = RealFunction::new("gaussian'", |x: f64| -2.0 * x * (-x * x).exp())
        .with_decay(DecayHint::Exponential { rate: 2.0, scale: 10.0, radius: 0.0 });
    let d2 = RealFunction::new("gaussian''", |x: f64| (4.0 * x * x - 2.0) * (-x * x).exp())
        .with_decay(DecayHint::Exponential { rate: 2.0, scale: 30.0, radius: 0.0 });
    FunctionPair::new(time, freq).with_derivatives(vec![d1, d2])
}

/// Triangle `f(x) = max(0, 1-|x|)`, transform `(2π)^{-1/2}·(sin(v/2)/(v/2))²`,
/// integral 1.
pub fn hat() -> FunctionPair {
    let time = RealFunction::new("hat", |x: f64| (1.0 - x.abs()).max(0.0))
        .with_decay(DecayHint::Compact { radius: 1.0, bound: 1.0 })
        .with_integral(1.0);
    let freq = SpectralFunction::analytic("hat_hat", |v: f64| {
        let half = 0.5 * v;
        let s = if half.abs() < 1e-2 {
            // sin(z)/z = 1 - z²/6 + z⁴/120 with error < 1e-16 for |z| < 0.01
            let z2 = half * half;
            1.0 - z2 / 6.0 + z2 * z2 / 120.0
        } else {
            half.sin() / half
        };
        s * s / SQRT_2PI
    })
    .with_decay(SpectralDecay::Polynomial { power: 2.0, scale: 4.0 / SQRT_2PI });
    FunctionPair::new(time, freq)
}

pub const CORPUS_NAMES: [&str; 5] = ["f1", "f2", "f3", "gaussian", "hat"];

pub fn by_name(name: &str) -> Result<FunctionPair> {
    match name {
        "f1" => Ok(f1()),
        "f2" => Ok(f2()),
        "f3" => Ok(f3()),
        "gaussian" => Ok(gaussian()),
        "hat" => Ok(hat()),
        other => Err(Error::UnknownFunction(other.to_string())),
    }
}

pub fn builtin_corpus() -> Vec<FunctionPair> {
    CORPUS_NAMES.iter().map(|n| by_name(n).unwrap()).collect()
}

// ---------------------------------------------------------------------------
// Numerical transform
// ---------------------------------------------------------------------------

/// `f̂(v) = (2π)^{-1/2} ∫ f(u) e^{-iuv} du` by adaptive quadrature over the
/// truncation radius implied by the decay hint. For `|v| > 1` the domain is
/// pre-split at half-period boundaries of the oscillation so each panel holds
/// at most one arch.
pub fn numeric_fourier(f: &RealFunction, v: f64, tol: f64) -> Result<Complex64> {
    let hint = f.decay()?;
    let r = hint.radius_for_tail_mass(tol / 4.0)?.max(1.0);

    let mut breaks: Vec<f64> = vec![-r, 0.0, r];
    if v.abs() > 1.0 {
        let step = std::f64::consts::PI / v.abs();
        let mut k = (-r / step).ceil() as i64;
        while (k as f64) * step < r {
            let x = k as f64 * step;
            if x > -r && x < r {
                breaks.push(x);
            }
            k += 1;
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let max_panels = (breaks.len() * 8).max(4000);
    let fc = f.clone();
    let cos_part = integrate::adaptive_breaks(
        &move |u: f64| fc.eval(u) * (u * v).cos(),
        &breaks,
        tol / 4.0,
        0.0,
        max_panels,
    )?;
    let fs = f.clone();
    let sin_part = integrate::adaptive_breaks(
        &move |u: f64| fs.eval(u) * (u * v).sin(),
        &breaks,
        tol / 4.0,
        0.0,
        max_panels,
    )?;
    Ok(Complex64::new(cos_part.value / SQRT_2PI, -sin_part.value / SQRT_2PI))
}

// ---------------------------------------------------------------------------
// Corpus transforms
// ---------------------------------------------------------------------------

/// `x ↦ f(x-τ)`; the transform picks up the phase `e^{-iτv}`.
pub fn translate(pair: &FunctionPair, tau: f64) -> FunctionPair {
    let name = format!("{}@{:+}", pair.time.name, tau);
    let base = pair.time.clone();
    let mut time = RealFunction::new(name.clone(), move |x: f64| base.eval(x - tau));
    time.exact_integral = pair.time.exact_integral;
    time.decay = pair.time.decay.map(|h| shift_hint(h, tau.abs()));

    let basef = pair.freq.clone();
    let mut freq = SpectralFunction {
        name: format!("{}_hat", name),
        eval: Arc::new(move |v: f64| {
            let phase = Complex64::from_polar(1.0, -tau * v);
            basef.eval(v).map(|z| z * phase)
        }),
        kind: pair.freq.kind,
        decay: pair.freq.decay,
        support_panels: pair.freq.support_panels.clone(),
    };
    freq.kind = pair.freq.kind;
    FunctionPair::new(time, freq)
}

fn shift_hint(hint: DecayHint, shift: f64) -> DecayHint {
    match hint {
        DecayHint::Exponential { rate, scale, radius } => DecayHint::Exponential {
            rate,
            scale: scale * (rate * shift).exp(),
            radius: radius + shift,
        },
        DecayHint::Polynomial { power, scale, radius } => DecayHint::Polynomial {
            power,
            scale: scale * 2.0f64.powf(power),
            radius: (radius + shift).max(2.0 * shift),
        },
        DecayHint::Compact { radius, bound } => {
            DecayHint::Compact { radius: radius + shift, bound }
        }
    }
}

/// Even part `(f(x)+f(-x))/2`; on the spectral side `(f̂(v)+f̂(-v))/2`.
pub fn even_part(pair: &FunctionPair) -> FunctionPair {
    part(pair, 1.0, "even")
}

/// Odd part `(f(x)-f(-x))/2`; on the spectral side `(f̂(v)-f̂(-v))/2`.
pub fn odd_part(pair: &FunctionPair) -> FunctionPair {
    part(pair, -1.0, "odd")
}

fn part(pair: &FunctionPair, sign: f64, label: &str) -> FunctionPair {
    let base = pair.time.clone();
    let mut time = RealFunction::new(
        format!("{}_{label}", pair.time.name),
        move |x: f64| 0.5 * (base.eval(x) + sign * base.eval(-x)),
    );
    time.decay = pair.time.decay;
    time.exact_integral = if sign > 0.0 { pair.time.exact_integral } else { Some(0.0) };

    let basef = pair.freq.clone();
    let freq = SpectralFunction {
        name: format!("{}_{label}", pair.freq.name),
        eval: Arc::new(move |v: f64| {
            let a = basef.eval(v)?;
            let b = basef.eval(-v)?;
            Ok(0.5 * (a + sign * b))
        }),
        kind: pair.freq.kind,
        decay: pair.freq.decay,
        support_panels: pair.freq.support_panels.clone(),
    };
    FunctionPair::new(time, freq)
}

/// `∫ f` computed from the decay hint by adaptive quadrature (used when no
/// exact integral is registered, and to cross-check the registered ones).
pub fn integral_numeric(f: &RealFunction, tol: f64) -> Result<f64> {
    let hint = f.decay()?;
    let r = hint.radius_for_tail_mass(tol / 4.0)?.max(1.0);
    let g = f.clone();
    let est = integrate::adaptive_breaks(
        &move |x: f64| g.eval(x),
        &[-r, 0.0, r],
        tol / 2.0,
        0.0,
        8000,
    )?;
    Ok(est.value)
}

/// L¹ norm `∫ |f|` over the decay-implied domain.
pub fn l1_norm(f: &RealFunction, tol: f64) -> Result<f64> {
    let hint = f.decay()?;
    let r = hint.radius_for_tail_mass(tol / 4.0)?.max(1.0);
    let g = f.clone();
    let est = integrate::adaptive_breaks(
        &move |x: f64| g.eval(x).abs(),
        &[-r, -0.5 * r, 0.0, 0.5 * r, r],
        tol / 2.0,
        0.0,
        16000,
    )?;
    Ok(est.value)
}

/// Lattice sum `h·Σ_{k∈ℤ} g(h·k)` truncated at `|k| ≤ n`, pairing `+k` with
/// `-k` and accumulating with compensated summation.
pub(crate) fn lattice_sum(g: &RealFunction, h: f64, n: u64) -> Result<f64> {
    let mut acc = Neumaier::new();
    acc.add(g.eval_checked(0.0)?);
    for k in 1..=n {
        let x = h * k as f64;
        acc.add(g.eval_checked(x)? + g.eval_checked(-x)?);
    }
    Ok(h * acc.value())
}
