//! Benchmark tables: lattice sums over a grid of step sizes with the
//! associated errors and order-revealing normalizations.

use crate::corpus::{self, FunctionPair};
use crate::error::{Error, Result};
use crate::fit;
use crate::quadrature;

/// Errors below this are dominated by double-precision roundoff in the
/// lattice sum; such rows are emitted but flagged so regressions can skip
/// them.
pub const FP_FLOOR: f64 = 1e-13;

/// Rule assigning the one-sided lattice extent `N` to a step size.
#[derive(Debug, Clone, Copy)]
pub enum NRule {
    /// `N = ⌈numerator/h⌉`, the usual "fixed physical window" choice.
    CeilPerH { numerator: f64 },
    Fixed(u64),
}

impl NRule {
    pub fn n_for(&self, h: f64) -> Result<u64> {
        match *self {
            NRule::CeilPerH { numerator } => {
                if !(numerator > 0.0) || !numerator.is_finite() {
                    return Err(Error::Domain(format!(
                        "window numerator must be positive, got {numerator}"
                    )));
                }
                Ok((numerator / h).ceil() as u64)
            }
            NRule::Fixed(n) => Ok(n),
        }
    }
}

#[derive(Debug)]
pub struct TableSpec {
    pub pair: FunctionPair,
    pub hs: Vec<f64>,
    pub n_rule: NRule,
    /// Exponent `p` for the `E/h^p` column; `None` omits the column.
    pub normalize_exponent: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub h: f64,
    pub n: u64,
    /// The lattice sum `S = h·Σ_{|k|≤N} f(hk)`.
    pub value: f64,
    /// `E = |S − ∫f|`.
    pub error: f64,
    /// `E/h^p` when a normalization exponent is set.
    pub normalized: Option<f64>,
    pub below_fp_floor: bool,
}

pub fn table(spec: &TableSpec) -> Result<Vec<TableRow>> {
    let integral = spec.pair.time.exact_integral.ok_or_else(|| {
        Error::Domain(format!(
            "table requires an exact integral on `{}`",
            spec.pair.time.name
        ))
    })?;
    let mut rows = Vec::with_capacity(spec.hs.len());
    for &h in &spec.hs {
        let n = spec.n_rule.n_for(h)?;
        let s = quadrature::trapezoidal_sum(&spec.pair.time, h, n)?;
        let error = (s.value - integral).abs();
        rows.push(TableRow {
            h,
            n,
            value: s.value,
            error,
            normalized: spec.normalize_exponent.map(|p| error / h.powf(p)),
            below_fp_floor: error < FP_FLOOR,
        });
    }
    Ok(rows)
}

/// The three stock benchmarks: the two-sided exponential (second order), its
/// `x²`-weighted variant (fourth order), and the smooth sixth-power kernel
/// (faster than any power until roundoff).
pub fn canonical_table_spec(index: u8) -> Result<TableSpec> {
    let dense_hs = vec![
        2.0, 1.0, 0.8, 0.6, 0.4, 0.2, 0.1, 0.08, 0.06, 0.04, 0.02, 0.01, 0.008, 0.006, 0.004,
        0.002, 0.001,
    ];
    match index {
        1 => Ok(TableSpec {
            pair: corpus::f1(),
            hs: dense_hs,
            n_rule: NRule::CeilPerH { numerator: 100.0 },
            normalize_exponent: Some(2.0),
        }),
        2 => Ok(TableSpec {
            pair: corpus::f2(),
            hs: dense_hs,
            n_rule: NRule::CeilPerH { numerator: 100.0 },
            normalize_exponent: Some(4.0),
        }),
        3 => Ok(TableSpec {
            pair: corpus::f3(),
            hs: vec![2.0, 1.0, 0.8, 0.6, 0.4, 0.2, 0.1, 0.08, 0.06],
            n_rule: NRule::CeilPerH { numerator: 1e4 },
            normalize_exponent: None,
        }),
        _ => Err(Error::Domain(format!("no canonical table {index}; use 1, 2 or 3"))),
    }
}

/// Least-squares slope of `log E` vs `log h` over the rows above the
/// floating-point floor.
pub fn order_fit(rows: &[TableRow]) -> Result<f64> {
    let kept: Vec<&TableRow> = rows.iter().filter(|r| !r.below_fp_floor).collect();
    let hs: Vec<f64> = kept.iter().map(|r| r.h).collect();
    let errors: Vec<f64> = kept.iter().map(|r| r.error).collect();
    fit::loglog_slope(&hs, &errors, 1e-12, 5)
}
