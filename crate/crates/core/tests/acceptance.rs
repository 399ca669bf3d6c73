//! End-to-end acceptance gates. Each test checks one published guarantee of
//! the crate and prints a single summary line
//!
//!   `ACCEPTANCE <n> <name>: PASS (<details>)`
//!
//! (or a FAIL line before panicking). The line is written to the process
//! stdout directly, past the harness capture, so a plain `cargo test` run
//! already shows the one-line-per-criterion report. All tolerances are
//! pinned here as constants next to their use.

use poisson_quad::bounds::{self, BoundKind, FractionalOptions, RemainderBound};
use poisson_quad::corpus::{self, FunctionPair};
use poisson_quad::extremal::{self, ExtremalFunction};
use poisson_quad::fractional::{self, RieszSpec};
use poisson_quad::moebius;
use poisson_quad::quadrature;
use poisson_quad::smoothness::{self, ModulusProfile};
use poisson_quad::spectral;
use poisson_quad::tables;
use poisson_quad::Error;
use std::time::Instant;

/// Write straight to the process stdout: the test harness captures the
/// `print!` macros of passing tests, and the report line must survive.
fn report(line: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn criterion(n: u32, name: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => report(format!("ACCEPTANCE {n} {name}: PASS ({detail})")),
        Err(msg) => {
            report(format!("ACCEPTANCE {n} {name}: FAIL ({msg})"));
            panic!("acceptance criterion {n} ({name}) failed: {msg}");
        }
    }
}

/// 16-digit golden values for the second-order benchmark (two-sided
/// exponential, N = ⌈100/h⌉).
const TABLE1_GOLD: [(f64, f64); 17] = [
    (2.0, 2.626070570998663),
    (1.0, 2.163953413738653),
    (0.8, 2.105545953465751),
    (0.6, 2.059643058193045),
    (0.4, 2.026595825375789),
    (0.2, 2.006662226450798),
    (0.1, 2.001666388955010),
    (0.08, 2.001066552906224),
    (0.06, 2.000599964003085),
    (0.04, 2.000266659555826),
    (0.02, 2.000066666222226),
    (0.01, 2.000016666638889),
    (0.008, 2.000010666655289),
    (0.006, 2.000005999996400),
    (0.004, 2.000002666665956),
    (0.002, 2.000000666666622),
    (0.001, 2.000000166666664),
];

/// Golden values for the fourth-order benchmark (`x²e^{-|x|}`).
const TABLE2_GOLD: [(f64, f64); 17] = [
    (2.0, 3.802874038904078),
    (1.0, 3.984589534249975),
    (0.8, 3.993508748796519),
    (0.6, 3.997900565813553),
    (0.4, 3.999578706124929),
    (0.2, 3.999973417811948),
    (0.1, 3.999998334655391),
    (0.08, 3.999999317679968),
    (0.06, 3.999999784061703),
    (0.04, 3.999999957338751),
    (0.02, 3.999999997333418),
    (0.01, 3.999999999833335),
    (0.008, 3.999999999931734),
    (0.006, 3.999999999978400),
    (0.004, 3.999999999995733),
    (0.002, 3.999999999999733),
    (0.001, 3.999999999999983),
];

/// Golden two-significant-figure errors for the smooth kernel benchmark on
/// the rows where double precision still resolves them.
const TABLE3_GOLD_E: [(f64, f64); 6] = [
    (2.0, 3.2e-2),
    (1.0, 6.0e-2),
    (0.8, 7.4e-2),
    (0.6, 3.7e-3),
    (0.4, 1.6e-3),
    (0.2, 3.3e-7),
];

fn round_two_sig(e: f64) -> f64 {
    if e <= 0.0 {
        return 0.0;
    }
    let m = 10f64.powf(e.log10().floor() - 1.0);
    (e / m).round() * m
}

#[test]
fn acceptance_01_second_order_table() {
    criterion(1, "second_order_table_regression", || {
        const REL_TOL: f64 = 1e-11;
        const NORM_TOL: f64 = 5e-4;
        let started = Instant::now();
        let spec = tables::canonical_table_spec(1).map_err(|e| e.to_string())?;
        let rows = tables::table(&spec).map_err(|e| e.to_string())?;
        if rows.len() != TABLE1_GOLD.len() {
            return Err(format!("expected 17 rows, got {}", rows.len()));
        }
        let mut worst_rel = 0.0f64;
        for (row, &(h, s_gold)) in rows.iter().zip(TABLE1_GOLD.iter()) {
            if row.h != h {
                return Err(format!("row grid mismatch: {} vs {h}", row.h));
            }
            let rel = (row.value - s_gold).abs() / s_gold;
            worst_rel = worst_rel.max(rel);
            if rel > REL_TOL {
                return Err(format!("h={h}: S={:.16} vs golden {s_gold:.16} (rel {rel:.2e})", row.value));
            }
            if h <= 0.02 {
                let norm = row.normalized.unwrap();
                if (norm - 0.1667).abs() > NORM_TOL {
                    return Err(format!("h={h}: E/h² = {norm} outside 0.1667±{NORM_TOL}"));
                }
            }
        }
        let dt = started.elapsed();
        if dt.as_secs_f64() > 10.0 {
            return Err(format!("runtime {:.2}s exceeds 10s", dt.as_secs_f64()));
        }
        Ok(format!(
            "17 rows, worst rel err {worst_rel:.2e} ≤ 1e-11; E/h² = 0.1667±{NORM_TOL} for h ≤ 0.02; {:.2}s",
            dt.as_secs_f64()
        ))
    });
}

#[test]
fn acceptance_02_fourth_order_table() {
    criterion(2, "fourth_order_table_regression", || {
        const REL_TOL: f64 = 1e-11;
        const NORM_TOL: f64 = 5e-4;
        let started = Instant::now();
        let spec = tables::canonical_table_spec(2).map_err(|e| e.to_string())?;
        let rows = tables::table(&spec).map_err(|e| e.to_string())?;
        let mut worst_rel = 0.0f64;
        for (row, &(h, s_gold)) in rows.iter().zip(TABLE2_GOLD.iter()) {
            let rel = (row.value - s_gold).abs() / s_gold;
            worst_rel = worst_rel.max(rel);
            if rel > REL_TOL {
                return Err(format!("h={h}: S={:.16} vs golden {s_gold:.16} (rel {rel:.2e})", row.value));
            }
            if h <= 0.02 {
                let norm = row.normalized.unwrap();
                if (norm - 0.0167).abs() > NORM_TOL {
                    return Err(format!("h={h}: E/h⁴ = {norm} outside 0.0167±{NORM_TOL}"));
                }
            }
        }
        let dt = started.elapsed();
        if dt.as_secs_f64() > 10.0 {
            return Err(format!("runtime {:.2}s exceeds 10s", dt.as_secs_f64()));
        }
        Ok(format!(
            "17 rows, worst rel err {worst_rel:.2e} ≤ 1e-11; E/h⁴ = 0.0167±{NORM_TOL} for h ≤ 0.02; {:.2}s",
            dt.as_secs_f64()
        ))
    });
}

#[test]
fn acceptance_03_smooth_kernel_table() {
    criterion(3, "smooth_kernel_table_partial_regression", || {
        const FP_ROWS_CAP: f64 = 1e-12;
        let spec = tables::canonical_table_spec(3).map_err(|e| e.to_string())?;
        let rows = tables::table(&spec).map_err(|e| e.to_string())?;
        for &(h, e_gold) in TABLE3_GOLD_E.iter() {
            let row = rows
                .iter()
                .find(|r| r.h == h)
                .ok_or_else(|| format!("missing row h={h}"))?;
            let rounded = round_two_sig(row.error);
            if (rounded - e_gold).abs() > 1e-9 * e_gold {
                return Err(format!(
                    "h={h}: E={:.6e} rounds to {rounded:.1e}, golden {e_gold:.1e}",
                    row.error
                ));
            }
        }
        // Below h = 0.1 the true error sinks under double-precision roundoff
        // of the lattice sum; only assert the fp ceiling there.
        for row in rows.iter().filter(|r| r.h <= 0.1) {
            if row.error > FP_ROWS_CAP {
                return Err(format!("h={}: E={:.3e} above fp cap {FP_ROWS_CAP:.0e}", row.h, row.error));
            }
        }
        Ok(format!(
            "6 resolvable rows match E to 2 significant figures; h ≤ 0.1 rows at E ≤ {FP_ROWS_CAP:.0e}"
        ))
    });
}

#[test]
fn acceptance_04_time_vs_fourier_remainder() {
    criterion(4, "remainder_sides_agree", || {
        const TOL: f64 = 1e-9;
        let started = Instant::now();
        let mut worst = 0.0f64;
        // Quadratic spectral decay needs K ≈ 8·10⁹/σ² for a ≤ 5e-10 tail.
        let f1 = corpus::f1();
        for (h, k) in [(2.0, 830_000_000u64), (1.0, 210_000_000), (0.4, 33_000_000), (0.2, 8_300_000)]
        {
            let sigma = 2.0 * std::f64::consts::PI / h;
            let time_side = quadrature::remainder_exact(&f1, h, None).map_err(|e| e.to_string())?;
            let spec = spectral::remainder_even(&f1.freq, sigma, Some(k)).map_err(|e| e.to_string())?;
            let diff = (time_side - spec.value.re).abs();
            worst = worst.max(diff);
            if diff > TOL {
                return Err(format!("f1 h={h}: |ΔR| = {diff:.3e} > {TOL:.0e} (K={k})"));
            }
        }
        // Quartic decay reaches the same tail with K = 2000.
        let f2 = corpus::f2();
        for h in [2.0, 1.0, 0.4, 0.2] {
            let sigma = 2.0 * std::f64::consts::PI / h;
            let time_side = quadrature::remainder_exact(&f2, h, None).map_err(|e| e.to_string())?;
            let spec =
                spectral::remainder_even(&f2.freq, sigma, Some(2000)).map_err(|e| e.to_string())?;
            let diff = (time_side - spec.value.re).abs();
            worst = worst.max(diff);
            if diff > TOL {
                return Err(format!("f2 h={h}: |ΔR| = {diff:.3e} > {TOL:.0e}"));
            }
        }
        Ok(format!(
            "8 lattice/spectrum pairs agree, worst |ΔR| = {worst:.2e} ≤ 1e-9; {:.2}s",
            started.elapsed().as_secs_f64()
        ))
    });
}

/// Evaluate one bound kind with the conventions of the domination suite:
/// difference order r = 2, Sobolev order s = 2, fractional order per
/// function.
fn eval_bound(
    pair: &FunctionPair,
    kind: BoundKind,
    frac_alpha: f64,
    h: f64,
) -> poisson_quad::Result<RemainderBound> {
    match kind {
        BoundKind::ModulusSeries => {
            bounds::bound_modulus_series(&pair.time, 2, h, 48, 8, 1e-8).map(|(b, _)| b)
        }
        BoundKind::SobolevModulus => bounds::bound_sobolev(pair, 2, 2, h, false, 8, 1e-8),
        BoundKind::SobolevNorm => bounds::bound_sobolev(pair, 2, 2, h, true, 8, 1e-8),
        BoundKind::FractionalModulus => {
            bounds::bound_fractional(pair, frac_alpha, 2, h, false, FractionalOptions::default())
        }
        BoundKind::FractionalNorm => {
            bounds::bound_fractional(pair, frac_alpha, 2, h, true, FractionalOptions::default())
        }
        BoundKind::DistanceInteger => bounds::bound_distance(pair, 2.0, h, true, None),
        BoundKind::DistanceFractional => bounds::bound_distance(pair, frac_alpha, h, false, None),
    }
}

#[test]
fn acceptance_05_bound_domination() {
    criterion(5, "bound_domination", || {
        const HS: [f64; 4] = [1.0, 0.4, 0.2, 0.1];
        let started = Instant::now();
        let f1 = corpus::f1();
        let f2 = corpus::f2();
        let mut applicable = [0usize; 2];
        let mut skipped = [0usize; 2];
        for (fi, (pair, frac_alpha)) in [(&f1, 1.25f64), (&f2, 2.0f64)].into_iter().enumerate() {
            for &h in &HS {
                let r_abs = quadrature::remainder_exact(pair, h, None)
                    .map_err(|e| e.to_string())?
                    .abs();
                for kind in BoundKind::ALL {
                    match eval_bound(pair, kind, frac_alpha, h) {
                        Ok(b) => {
                            applicable[fi] += 1;
                            if b.value < r_abs {
                                return Err(format!(
                                    "{} {} h={h}: bound {:.6e} below |R| {:.6e}",
                                    pair.time.name,
                                    kind.label(),
                                    b.value,
                                    r_abs
                                ));
                            }
                        }
                        // The exponential kernel lacks an integrable second
                        // derivative and a Riesz derivative of order 1.25:
                        // those four bounds must decline via typed
                        // precondition errors, not numbers.
                        Err(Error::DerivativeUnavailable { .. })
                            if fi == 0
                                && matches!(
                                    kind,
                                    BoundKind::SobolevModulus | BoundKind::SobolevNorm
                                ) =>
                        {
                            skipped[fi] += 1;
                        }
                        Err(Error::RieszUnavailable(_))
                            if fi == 0
                                && matches!(
                                    kind,
                                    BoundKind::FractionalModulus | BoundKind::FractionalNorm
                                ) =>
                        {
                            skipped[fi] += 1;
                        }
                        Err(e) => {
                            return Err(format!(
                                "{} {} h={h}: unexpected error {e}",
                                pair.time.name,
                                kind.label()
                            ));
                        }
                    }
                }
            }
        }
        if applicable[0] != 3 * HS.len() || skipped[0] != 4 * HS.len() {
            return Err(format!(
                "exponential kernel: {} applicable / {} declined, expected {} / {}",
                applicable[0],
                skipped[0],
                3 * HS.len(),
                4 * HS.len()
            ));
        }
        if applicable[1] != 7 * HS.len() || skipped[1] != 0 {
            return Err(format!(
                "weighted kernel: {} applicable / {} declined, expected {} / 0",
                applicable[1],
                skipped[1],
                7 * HS.len()
            ));
        }
        // The s = 2 norm-variant prefactor must be h²/12 exactly.
        for &h in &HS {
            let b = bounds::bound_sobolev(&f2, 2, 2, h, true, 8, 1e-8).map_err(|e| e.to_string())?;
            if (b.constant - 1.0 / 12.0).abs() > 1e-15 || b.order_exponent != 2.0 {
                return Err(format!(
                    "norm prefactor h^{}·{} differs from h²/12",
                    b.order_exponent, b.constant
                ));
            }
        }
        Ok(format!(
            "all applicable bounds dominate |R| at 4 step sizes ({} + {} checks), 16 declined by typed gates, s=2 prefactor = h²/12; {:.2}s",
            applicable[0] + applicable[1],
            4 * HS.len(),
            started.elapsed().as_secs_f64()
        ))
    });
}

#[test]
fn acceptance_06_sharpness() {
    criterion(6, "extremal_sharpness", || {
        const RATIO_TOL: f64 = 1e-6;
        const CLOSED_FORM_TOL: f64 = 1e-8;
        // Property ids with closed-form targets (the two structural checks
        // `support_geometry`/`weighted_mass_bound` are one-sided).
        const CLOSED_FORM_IDS: [&str; 9] = [
            "unit_mass",
            "transform_consistency",
            "bump_area",
            "lattice_delta",
            "bump_variation",
            "bump_weighted_sup",
            "tip_values",
            "variation_budget",
            "global_weighted_sup",
        ];
        let started = Instant::now();
        let mut worst_ratio_dev = 0.0f64;
        let mut worst_prop_dev = 0.0f64;
        for alpha in [1.25, 1.5, 2.0, 3.0] {
            let e = ExtremalFunction::new(alpha).map_err(|e| e.to_string())?;
            for sigma in [1.0, 4.0] {
                let s = extremal::sharpness_check(&e, sigma).map_err(|e| e.to_string())?;
                let dev = (s.ratio - 1.0).abs();
                worst_ratio_dev = worst_ratio_dev.max(dev);
                if dev > RATIO_TOL {
                    return Err(format!(
                        "α={alpha} σ={sigma}: ratio {} (lhs {}, rhs {})",
                        s.ratio, s.lhs, s.rhs
                    ));
                }
            }
            let checks = extremal::verify_properties(&e).map_err(|e| e.to_string())?;
            if checks.len() != 11 {
                return Err(format!("expected 11 property checks, got {}", checks.len()));
            }
            for c in &checks {
                if !c.pass {
                    return Err(format!(
                        "α={alpha}: property {} failed (measured {}, expected {}, dev {:.3e})",
                        c.id, c.measured, c.expected, c.deviation
                    ));
                }
                if CLOSED_FORM_IDS.contains(&c.id) {
                    worst_prop_dev = worst_prop_dev.max(c.deviation);
                    if c.deviation > CLOSED_FORM_TOL {
                        return Err(format!(
                            "α={alpha}: property {} deviation {:.3e} > {CLOSED_FORM_TOL:.0e}",
                            c.id, c.deviation
                        ));
                    }
                }
            }
        }
        Ok(format!(
            "ratio = 1 within {worst_ratio_dev:.2e} over 4 orders × 2 scales; 11 properties pass, closed-form devs ≤ {worst_prop_dev:.2e}; {:.2}s",
            started.elapsed().as_secs_f64()
        ))
    });
}

#[test]
fn acceptance_07_moebius_recovery() {
    criterion(7, "moebius_spectrum_recovery", || {
        const TOL: f64 = 1e-6;
        const K: u64 = 64;
        let f1 = corpus::f1();
        let sigma1 = 2.0 * std::f64::consts::PI;
        let seq = moebius::remainder_sequence_spectral(&f1, sigma1, K).map_err(|e| e.to_string())?;
        let rec = moebius::recover_spectrum(&seq).map_err(|e| e.to_string())?;
        let want1 = f1.freq.eval(sigma1).map_err(|e| e.to_string())?.re;
        let d1 = (rec.value - want1).abs();
        if d1 > TOL {
            return Err(format!("f̂₁(2π): recovered {} vs {want1} (|Δ| = {d1:.3e})", rec.value));
        }

        let f2 = corpus::f2();
        let sigma2 = 4.0 * std::f64::consts::PI;
        let seq2 = moebius::remainder_sequence_exact(&f2, sigma2, K).map_err(|e| e.to_string())?;
        let rec2 = moebius::recover_spectrum(&seq2).map_err(|e| e.to_string())?;
        let want2 = f2.freq.eval(sigma2).map_err(|e| e.to_string())?.re;
        let d2 = (rec2.value - want2).abs();
        if d2 > TOL {
            return Err(format!("f̂₂(4π): recovered {} vs {want2} (|Δ| = {d2:.3e})", rec2.value));
        }
        Ok(format!(
            "f̂₁(2π) within {d1:.2e} (spectral source), f̂₂(4π) within {d2:.2e} (lattice source), K = {K}"
        ))
    });
}

#[test]
fn acceptance_08_parseval() {
    criterion(8, "translation_parseval", || {
        const TOL: f64 = 1e-10;
        let f1 = corpus::f1();
        let report = moebius::parseval_check(&f1, 2.0 * std::f64::consts::PI, 64, None)
            .map_err(|e| e.to_string())?;
        if report.relative_gap > TOL {
            return Err(format!(
                "mean square {} vs spectral side {} (gap {:.3e})",
                report.mean_square, report.spectral_side, report.relative_gap
            ));
        }
        Ok(format!(
            "period mean square = 2π·Σ'|f̂(kσ)|² within {:.2e} (64 samples, σ = 2π)",
            report.relative_gap
        ))
    });
}

#[test]
fn acceptance_09_riesz_cross_validation() {
    criterion(9, "riesz_route_agreement", || {
        const ROUTE_TOL: f64 = 1e-3;
        const CLASSICAL_TOL: f64 = 1e-6;
        let started = Instant::now();
        let g = corpus::gaussian();
        let mut worst_route = 0.0f64;
        let mut worst_classical = 0.0f64;
        for alpha in [1.25, 1.5, 2.0] {
            let spec = RieszSpec::new(alpha).map_err(|e| e.to_string())?;
            for t in [0.0, 0.5, 1.0] {
                let via_spectrum =
                    fractional::riesz_fourier(&g, alpha, t, 1e-10).map_err(|e| e.to_string())?;
                let via_difference =
                    fractional::riesz_difference(&g.time, &spec, t).map_err(|e| e.to_string())?;
                let d = (via_spectrum - via_difference).abs();
                worst_route = worst_route.max(d);
                if d > ROUTE_TOL {
                    return Err(format!("α={alpha} t={t}: routes differ by {d:.3e}"));
                }
                if alpha == 2.0 {
                    // Order 2 is classical: both routes must match -g''.
                    let target = (2.0 - 4.0 * t * t) * (-t * t).exp();
                    let ds = (via_spectrum - target).abs();
                    let dd = (via_difference - target).abs();
                    worst_classical = worst_classical.max(ds.max(dd));
                    if ds > CLASSICAL_TOL || dd > CLASSICAL_TOL {
                        return Err(format!(
                            "α=2 t={t}: spectrum off by {ds:.3e}, difference off by {dd:.3e} vs -g''"
                        ));
                    }
                }
            }
        }
        Ok(format!(
            "9 (α,t) points agree within {worst_route:.2e} ≤ 1e-3; α=2 matches -g'' within {worst_classical:.2e}; {:.2}s",
            started.elapsed().as_secs_f64()
        ))
    });
}

#[test]
fn acceptance_10_smoothness_suite() {
    criterion(10, "modulus_inequalities", || {
        const SLACK: f64 = 1e-8;
        let started = Instant::now();
        let corpus_pairs = [
            corpus::f1(),
            corpus::f2(),
            corpus::f3(),
            corpus::gaussian(),
            corpus::hat(),
        ];
        // Monotonicity in δ and the 2^r·‖f‖₁ ceiling.
        for pair in &corpus_pairs {
            let l1 = corpus::l1_norm(&pair.time, 1e-9).map_err(|e| e.to_string())?;
            for r in 1..=3u32 {
                let profile =
                    ModulusProfile::measure(&pair.time, r, &[0.1, 0.5, 1.0, 2.0, 10.0], 8, 1e-8)
                        .map_err(|e| e.to_string())?;
                if !profile.is_monotone(1e-7) {
                    return Err(format!("{} r={r}: modulus not monotone in δ", pair.time.name));
                }
                if !profile.is_bounded_by_norm(l1, SLACK) {
                    return Err(format!(
                        "{} r={r}: modulus exceeds 2^r·‖f‖₁ = {}",
                        pair.time.name,
                        2.0f64.powi(r as i32) * l1
                    ));
                }
            }
        }
        // Derivative transfer inequalities for the kernel in W^{2,1}.
        let f2 = corpus::f2();
        let d2_norm = corpus::l1_norm(f2.derivative(2).map_err(|e| e.to_string())?, 1e-9)
            .map_err(|e| e.to_string())?;
        for &d in &[0.25, 0.5, 1.0] {
            let w2 = smoothness::modulus(&f2.time, 2, d, 8, 1e-8).map_err(|e| e.to_string())?;
            if w2 > d * d * d2_norm + SLACK {
                return Err(format!("ω₂({d}) = {w2} above δ²·‖f''‖₁ = {}", d * d * d2_norm));
            }
            let w1_d1 = smoothness::modulus(
                f2.derivative(1).map_err(|e| e.to_string())?,
                1,
                d,
                8,
                1e-8,
            )
            .map_err(|e| e.to_string())?;
            if w2 > d * w1_d1 + SLACK {
                return Err(format!("ω₂({d}) = {w2} above δ·ω₁(f';δ) = {}", d * w1_d1));
            }
        }
        // Spectrum domination by the modulus bound.
        for pair in [&corpus::f1(), &corpus::f2()] {
            for r in [1u32, 2] {
                for &v in &[1.0, std::f64::consts::PI, 2.0 * std::f64::consts::PI, 10.0] {
                    let b = smoothness::fourier_bound_from_modulus(&pair.time, r, v, 8, 1e-8)
                        .map_err(|e| e.to_string())?;
                    let actual = pair.freq.eval(v).map_err(|e| e.to_string())?.norm();
                    if b + 1e-12 < actual {
                        return Err(format!(
                            "{} r={r} v={v}: bound {b:.6e} below |f̂(v)| = {actual:.6e}",
                            pair.time.name
                        ));
                    }
                }
            }
        }
        // Triangle closed form.
        let hat = corpus::hat();
        let w = smoothness::modulus(&hat.time, 1, 0.5, 8, 1e-9).map_err(|e| e.to_string())?;
        if (w - 0.875).abs() > 1e-6 {
            return Err(format!("ω₁(Λ; 0.5) = {w}, want 0.875 ± 1e-6"));
        }
        Ok(format!(
            "monotone + norm-capped over 5 kernels × r ≤ 3; derivative transfer and spectrum domination hold; ω₁(Λ;0.5) = 0.875 ± {:.1e}; {:.2}s",
            (w - 0.875).abs(),
            started.elapsed().as_secs_f64()
        ))
    });
}

#[test]
fn acceptance_11_order_fits() {
    criterion(11, "convergence_order_fits", || {
        const SLOPE_TOL: f64 = 0.02;
        let started = Instant::now();
        let fits = [
            (1u8, 0.004, 0.4, 2.0),
            (2u8, 0.02, 0.8, 4.0),
        ];
        let mut devs = Vec::new();
        for &(idx, lo, hi, want) in &fits {
            let spec = tables::canonical_table_spec(idx).map_err(|e| e.to_string())?;
            let rows: Vec<_> = tables::table(&spec)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|r| r.h >= lo && r.h <= hi)
                .collect();
            let slope = tables::order_fit(&rows).map_err(|e| e.to_string())?;
            if (slope - want).abs() > SLOPE_TOL {
                return Err(format!("table {idx}: slope {slope} outside {want}±{SLOPE_TOL}"));
            }
            devs.push((slope - want).abs());
        }
        // The smooth kernel decays faster than any of the fixed orders.
        let spec3 = tables::canonical_table_spec(3).map_err(|e| e.to_string())?;
        let rows3: Vec<_> = tables::table(&spec3)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|r| r.h >= 0.2 && r.h <= 1.0)
            .collect();
        let slope3 = tables::order_fit(&rows3).map_err(|e| e.to_string())?;
        if slope3 <= 6.0 {
            return Err(format!("smooth kernel slope {slope3} not above 6"));
        }
        // Remainder order tracks the distance order shifted by α.
        let sigmas = [4.0, 6.0, 9.0, 13.5, 20.25];
        for (pair, alpha) in [(corpus::f2(), 2.0), (corpus::f1(), 1.25)] {
            let check = moebius::equivalence_order_check(&pair, alpha, &sigmas)
                .map_err(|e| e.to_string())?;
            if !check.consistent || check.degenerate {
                return Err(format!(
                    "{} α={alpha}: remainder slope {}, dist slope {} (consistent={}, degenerate={})",
                    pair.time.name,
                    check.remainder_slope,
                    check.dist_slope,
                    check.consistent,
                    check.degenerate
                ));
            }
        }
        Ok(format!(
            "slopes 2.00±{:.3} and 4.00±{:.3}; smooth kernel slope {slope3:.2} > 6; remainder/distance orders consistent for both test kernels; {:.2}s",
            devs[0], devs[1],
            started.elapsed().as_secs_f64()
        ))
    });
}
