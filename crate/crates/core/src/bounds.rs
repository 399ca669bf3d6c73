//! Guaranteed remainder bounds for the infinite trapezoidal rule, all of the
//! shape `|R| ≤ constant · h^order · measurement` with the measurement taken
//! from the function itself (modulus of smoothness, derivative L¹ norm,
//! fractional derivative, or weighted spectral distance).

use crate::corpus::{l1_norm, FunctionPair, RealFunction};
use crate::distance::{dist_bernstein, DistanceQuery};
use crate::error::{Error, Result};
use crate::fractional;
use crate::smoothness;
use crate::sum::Neumaier;

/// Riemann zeta on `s > 1` by Euler–Maclaurin (direct sum to `N = 128`, four
/// Bernoulli correction terms), absolute error well below 1e-14 across the
/// range used here.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Domain(format!("zeta requires s > 1, got {s}")));
    }
    const N: f64 = 128.0;
    let mut acc = Neumaier::new();
    for k in 1..=127u64 {
        acc.add((k as f64).powf(-s));
    }
    // ∫_N^∞ x^{-s} dx + ½N^{-s} + Σ B_{2m}/(2m)! · (s)_{2m-1} · N^{-s-2m+1}
    acc.add(N.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * N.powf(-s));
    let b = [
        (1.0 / 6.0, 2.0),       // B2/2!
        (-1.0 / 30.0, 24.0),    // B4/4!
        (1.0 / 42.0, 720.0),    // B6/6!
        (-1.0 / 30.0, 40320.0), // B8/8!
    ];
    for (m, &(bern, fact)) in b.iter().enumerate() {
        let k = 2 * (m + 1);
        // rising factorial s·(s+1)···(s+k-2), k-1 factors
        let mut pochhammer = 1.0;
        for i in 0..(k - 1) {
            pochhammer *= s + i as f64;
        }
        acc.add(bern / fact * pochhammer * N.powf(-s - (k as f64) + 1.0));
    }
    Ok(acc.value())
}

/// Which bound family produced a [`RemainderBound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Series of moduli over the dual lattice; no explicit power of `h`.
    ModulusSeries,
    /// `h^s`·modulus of the `s`-th derivative.
    SobolevModulus,
    /// `h^s`·L¹ norm of the `s`-th derivative.
    SobolevNorm,
    /// `h^α`·modulus of the fractional derivative.
    FractionalModulus,
    /// `h^α`·L¹ norm of the fractional derivative.
    FractionalNorm,
    /// `h^s`·weighted spectral distance, integer order.
    DistanceInteger,
    /// `h^α`·weighted spectral distance, fractional order.
    DistanceFractional,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::ModulusSeries,
        BoundKind::SobolevModulus,
        BoundKind::SobolevNorm,
        BoundKind::FractionalModulus,
        BoundKind::FractionalNorm,
        BoundKind::DistanceInteger,
        BoundKind::DistanceFractional,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::ModulusSeries => "modulus_series",
            BoundKind::SobolevModulus => "sobolev_modulus",
            BoundKind::SobolevNorm => "sobolev_norm",
            BoundKind::FractionalModulus => "fractional_modulus",
            BoundKind::FractionalNorm => "fractional_norm",
            BoundKind::DistanceInteger => "distance_integer",
            BoundKind::DistanceFractional => "distance_fractional",
        }
    }
}

/// A guaranteed bound `|R| ≤ value`, kept in factored form; the invariant
/// `value = constant·h^order_exponent·measurement` holds exactly as computed.
#[derive(Debug, Clone, Copy)]
pub struct RemainderBound {
    pub kind: BoundKind,
    pub value: f64,
    pub h: f64,
    pub order_exponent: f64,
    pub constant: f64,
    pub measurement: f64,
}

impl RemainderBound {
    fn assemble(kind: BoundKind, h: f64, order_exponent: f64, constant: f64, measurement: f64) -> Self {
        let value = constant * h.powf(order_exponent) * measurement;
        RemainderBound { kind, value, h, order_exponent, constant, measurement }
    }
}

fn check_h(h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("step must be positive and finite, got {h}")));
    }
    Ok(2.0 * std::f64::consts::PI / h)
}

/// Bound with no smoothness assumptions beyond an `r`-th modulus:
/// `|R| ≤ 2^{1-r}·Σ_{k≥1} ω_r(f; π/(σk))`, truncated at `k_max` terms.
///
/// Returns the bound and a convergence flag: `false` when the last summed
/// term still exceeds 1e-3 of the partial sum (the series was truncated too
/// early to trust).
pub fn bound_modulus_series(
    f: &RealFunction,
    r: u32,
    h: f64,
    k_max: u32,
    grid_n: usize,
    tol: f64,
) -> Result<(RemainderBound, bool)> {
    let sigma = check_h(h)?;
    if k_max < 2 {
        return Err(Error::Domain(format!("series needs at least 2 terms, got {k_max}")));
    }
    let mut acc = Neumaier::new();
    let mut last = f64::INFINITY;
    for k in 1..=k_max {
        let delta = std::f64::consts::PI / (sigma * k as f64);
        last = smoothness::modulus(f, r, delta, grid_n, tol)?;
        acc.add(last);
    }
    let sum = acc.value();
    let converged = last <= 1e-3 * sum;
    let constant = 2.0f64.powi(1 - r as i32);
    Ok((
        RemainderBound::assemble(BoundKind::ModulusSeries, h, 0.0, constant, sum),
        converged,
    ))
}

/// Sobolev-route bound through the registered `s`-th derivative:
/// with `use_norm`, `|R| ≤ ζ(s)/(π^s·2^{s-1}) · h^s · ‖f^{(s)}‖₁`;
/// otherwise `|R| ≤ ζ(s)/(π^s·2^{r+s-1}) · h^s · ω_r(f^{(s)}; h/2)`.
pub fn bound_sobolev(
    pair: &FunctionPair,
    s: u32,
    r: u32,
    h: f64,
    use_norm: bool,
    grid_n: usize,
    tol: f64,
) -> Result<RemainderBound> {
    check_h(h)?;
    if s < 2 {
        return Err(Error::Domain(format!("derivative order must be ≥ 2, got {s}")));
    }
    let deriv = pair.derivative(s)?;
    let z = zeta(s as f64)?;
    if use_norm {
        let constant = z / (std::f64::consts::PI.powi(s as i32) * 2.0f64.powi(s as i32 - 1));
        let m = l1_norm(deriv, tol)?;
        Ok(RemainderBound::assemble(BoundKind::SobolevNorm, h, s as f64, constant, m))
    } else {
        let constant =
            z / (std::f64::consts::PI.powi(s as i32) * 2.0f64.powi(r as i32 + s as i32 - 1));
        let m = smoothness::modulus(deriv, r, h / 2.0, grid_n, tol)?;
        Ok(RemainderBound::assemble(BoundKind::SobolevModulus, h, s as f64, constant, m))
    }
}

/// Knobs for the fractional bound (the measurement may need an explicit
/// integration window when the materialized derivative is not integrable
/// over the whole line).
#[derive(Debug, Clone, Copy)]
pub struct FractionalOptions {
    pub grid_n: usize,
    pub tol: f64,
    /// Restrict the L¹/modulus domain to `[-radius, radius]`; the resulting
    /// measurement (and bound) is then a lower estimate of the full-line one.
    pub domain_radius: Option<f64>,
}

impl Default for FractionalOptions {
    fn default() -> Self {
        FractionalOptions { grid_n: 8, tol: 1e-8, domain_radius: None }
    }
}

/// Fractional-route bound through the materialized Riesz derivative: the
/// same two shapes as [`bound_sobolev`] with `s` replaced by a real `α > 1`.
pub fn bound_fractional(
    pair: &FunctionPair,
    alpha: f64,
    r: u32,
    h: f64,
    use_norm: bool,
    opts: FractionalOptions,
) -> Result<RemainderBound> {
    check_h(h)?;
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("fractional order must exceed 1, got {alpha}")));
    }
    let deriv = fractional::materialize_riesz(pair, alpha, opts.tol * 1e-2)?;
    let deriv = match opts.domain_radius {
        None => deriv,
        Some(radius) => {
            // Same evaluator, compactly windowed: measurements become
            // explicit lower estimates over [-radius, radius].
            let bound_inside = deriv
                .decay
                .map(|hint| hint.envelope(5.0).max(hint.envelope(radius)))
                .unwrap_or(1.0)
                .max(1.0);
            let inner = deriv.clone();
            RealFunction::new(deriv.name.clone(), move |t: f64| {
                if t.abs() <= radius {
                    inner.eval(t)
                } else {
                    0.0
                }
            })
            .with_decay(crate::corpus::DecayHint::Compact { radius, bound: bound_inside })
        }
    };
    let z = zeta(alpha)?;
    if use_norm {
        let constant = z / (std::f64::consts::PI.powf(alpha) * 2.0f64.powf(alpha - 1.0));
        let m = l1_norm(&deriv, opts.tol)?;
        Ok(RemainderBound::assemble(BoundKind::FractionalNorm, h, alpha, constant, m))
    } else {
        let constant =
            z / (std::f64::consts::PI.powf(alpha) * 2.0f64.powf(r as f64 + alpha - 1.0));
        let m = smoothness::modulus(&deriv, r, h / 2.0, opts.grid_n, opts.tol)?;
        Ok(RemainderBound::assemble(BoundKind::FractionalModulus, h, alpha, constant, m))
    }
}

/// Bound through the weighted distance from the band `[-σ, σ]`:
/// `|R| ≤ 2ζ(s)/(2π)^{s-1/2} · h^s · sup_{|v|≥σ}|v|^s|f̂(v)|`.
///
/// The same expression serves integer and fractional orders; `integer_mode`
/// only selects the reported kind and insists on an integer `order ≥ 2`.
pub fn bound_distance(
    pair: &FunctionPair,
    order: f64,
    h: f64,
    integer_mode: bool,
    query: Option<DistanceQuery>,
) -> Result<RemainderBound> {
    let sigma = check_h(h)?;
    if integer_mode {
        if order < 2.0 || order.fract() != 0.0 {
            return Err(Error::Domain(format!(
                "integer mode requires an integer order ≥ 2, got {order}"
            )));
        }
    } else if !(order > 1.0) {
        return Err(Error::Domain(format!("fractional order must exceed 1, got {order}")));
    }
    let q = match query {
        Some(mut q) => {
            q.weight_exponent = order;
            q.sigma = sigma;
            q
        }
        None => DistanceQuery::new(order, sigma),
    };
    let d = dist_bernstein(&pair.freq, &q)?;
    let z = zeta(order)?;
    let constant = 2.0 * z / (2.0 * std::f64::consts::PI).powf(order - 0.5);
    let kind = if integer_mode { BoundKind::DistanceInteger } else { BoundKind::DistanceFractional };
    Ok(RemainderBound::assemble(kind, h, order, constant, d.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::quadrature;

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (diff {:.3e})", (a - b).abs());
    }

    #[test]
    fn zeta_reference_values() {
        let pi = std::f64::consts::PI;
        assert_close(zeta(2.0).unwrap(), pi * pi / 6.0, 1e-14, "ζ(2)");
        assert_close(zeta(4.0).unwrap(), pi.powi(4) / 90.0, 1e-14, "ζ(4)");
        // Independent 50-digit references for the non-integer arguments used
        // throughout.
        assert_close(zeta(1.25).unwrap(), 4.595_111_825_842_943, 5e-14, "ζ(1.25)");
        assert_close(zeta(1.5).unwrap(), 2.612_375_348_685_488, 5e-14, "ζ(1.5)");
        assert_close(zeta(3.0).unwrap(), 1.202_056_903_159_594_2, 1e-14, "ζ(3)");
        assert!(matches!(zeta(1.0), Err(Error::Domain(_))));
        assert!(matches!(zeta(0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn second_order_norm_constant_is_one_twelfth() {
        let f2 = corpus::f2();
        let b = bound_sobolev(&f2, 2, 2, 0.5, true, 8, 1e-9).unwrap();
        assert!(
            (b.constant - 1.0 / 12.0).abs() < 1e-15,
            "constant {} vs 1/12",
            b.constant
        );
        assert_close(
            b.value,
            b.constant * 0.25 * b.measurement,
            1e-15,
            "factored form",
        );
    }

    #[test]
    fn sobolev_norm_bound_dominates_remainder() {
        let f2 = corpus::f2();
        for &h in &[1.0, 0.5, 0.2] {
            let r = quadrature::remainder_exact(&f2, h, None).unwrap().abs();
            let b = bound_sobolev(&f2, 2, 2, h, true, 8, 1e-9).unwrap();
            assert!(b.value >= r, "h={h}: bound {} below |R| {r}", b.value);
        }
        // An s=2 bound on a remainder that actually decays like h⁴ loses a
        // factor ~12.4/h²; at h=1 it is tight to within ~13×.
        let r = quadrature::remainder_exact(&f2, 1.0, None).unwrap().abs();
        let b = bound_sobolev(&f2, 2, 2, 1.0, true, 8, 1e-9).unwrap();
        assert!(b.value <= 15.0 * r, "bound {} vs |R| {r}", b.value);
    }

    #[test]
    fn modulus_series_bound_dominates_remainder() {
        let f1 = corpus::f1();
        for &h in &[1.0, 0.5] {
            let r = quadrature::remainder_exact(&f1, h, None).unwrap().abs();
            // ω₂ terms shrink like 1/k²: 48 terms push the last term below
            // the 1e-3 relative convergence threshold.
            let (b, converged) = bound_modulus_series(&f1.time, 2, h, 48, 8, 1e-8).unwrap();
            assert!(converged, "series flagged as unconverged at h={h}");
            assert!(b.value >= r, "h={h}: bound {} below |R| {r}", b.value);
        }
    }

    #[test]
    fn distance_bound_dominates_remainder_for_slow_decay() {
        let f1 = corpus::f1();
        for &h in &[1.0, 0.4] {
            let r = quadrature::remainder_exact(&f1, h, None).unwrap().abs();
            let b = bound_distance(&f1, 1.25, h, false, None).unwrap();
            assert!(b.value >= r, "h={h}: bound {} below |R| {r}", b.value);
        }
    }

    #[test]
    fn distance_integer_mode_validates_order() {
        let f2 = corpus::f2();
        assert!(matches!(
            bound_distance(&f2, 2.5, 1.0, true, None),
            Err(Error::Domain(_))
        ));
        assert!(bound_distance(&f2, 2.0, 1.0, true, None).is_ok());
    }

    #[test]
    fn fractional_bound_unavailable_when_derivative_is_not() {
        // f1 at α = 1.25: spectrum decays like v^{-2}, the Riesz derivative
        // does not exist in an integrable sense.
        let f1 = corpus::f1();
        assert!(matches!(
            bound_fractional(&f1, 1.25, 2, 1.0, true, FractionalOptions::default()),
            Err(Error::RieszUnavailable(_))
        ));
    }

    #[test]
    fn fractional_matches_sobolev_at_integer_order() {
        // α = 2 must reproduce the classical s = 2 norm bound: same
        // constant, and ‖D^{⟨2⟩}f‖₁ = ‖f''‖₁.
        let f2 = corpus::f2();
        let classical = bound_sobolev(&f2, 2, 2, 0.5, true, 8, 1e-9).unwrap();
        let frac = bound_fractional(
            &f2,
            2.0,
            2,
            0.5,
            true,
            FractionalOptions { grid_n: 8, tol: 1e-9, domain_radius: None },
        )
        .unwrap();
        assert_close(frac.constant, classical.constant, 1e-15, "constants");
        assert_close(
            frac.measurement,
            classical.measurement,
            1e-8 * classical.measurement,
            "‖D²f‖₁ vs ‖f''‖₁",
        );
    }
}
