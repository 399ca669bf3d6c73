//! Command-line front end: canonical tables, remainder computations on both
//! sides, bound-domination sweeps, smoothness/Riesz measurements, Möbius
//! recovery, extremal-function reports, and order fits.

mod config;
mod grid;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use poisson_quad::bounds::{self, BoundKind, FractionalOptions, RemainderBound};
use poisson_quad::corpus::{self, FunctionPair};
use poisson_quad::distance::{dist_bernstein, DistanceQuery};
use poisson_quad::error::Error;
use poisson_quad::extremal::{sharpness_check, verify_properties, ExtremalFunction};
use poisson_quad::fractional::{self, RieszSpec};
use poisson_quad::moebius;
use poisson_quad::quadrature;
use poisson_quad::smoothness::ModulusProfile;
use poisson_quad::spectral;
use poisson_quad::tables::{self, TableSpec};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

use config::RunConfig;
use output::{num, opt_num, Cell, Format, Table};

#[derive(Parser)]
#[command(
    name = "poisson-quad",
    version,
    about = "Trapezoidal-rule remainders computed on the Fourier side: \
             exact remainders, guaranteed bounds, sharpness certificates."
)]
struct Cli {
    /// Config file with key=value lines (tol, k, n, j_max, out, deterministic)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated lattice sum h·Σ f(hk) with truncation bound and error
    Quad {
        /// Corpus function name (f1, f2, f3, gaussian, hat)
        #[arg(long = "fn")]
        function: String,
        /// Lattice step
        #[arg(long)]
        h: f64,
        /// Truncation index (default: from the decay hint)
        #[arg(long)]
        n: Option<u64>,
        /// Normalization exponent: report E/h^p as E_norm
        #[arg(long)]
        p: Option<f64>,
    },
    /// Quadrature remainder, from the time side, the Fourier side, or both
    Remainder {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        h: f64,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    /// Modulus-of-smoothness profile ω_r(f; δ) over a δ grid
    Modulus {
        #[arg(long = "fn")]
        function: String,
        /// Difference order r (1–6)
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// δ grid: comma list or lo:hi:lin|log[:count]
        #[arg(long)]
        deltas: String,
    },
    /// Remainder bounds vs the measured |R| across an h grid
    Bounds {
        #[arg(long = "fn")]
        function: String,
        /// h grid: comma list or lo:hi:lin|log[:count]
        #[arg(long)]
        h_grid: String,
        /// "all" or a comma list of bound labels
        #[arg(long, default_value = "all")]
        kinds: String,
        /// Fractional order for the fractional/distance-fractional bounds
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        /// Modulus difference order
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Integer derivative order for the Sobolev/distance-integer bounds
        #[arg(long, default_value_t = 2)]
        s: u32,
    },
    /// Riesz fractional derivative by the spectral and difference routes
    Riesz {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        alpha: f64,
        /// Evaluation point
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Weighted spectral distance from the band [-σ, σ] across a σ grid
    Dist {
        #[arg(long = "fn")]
        function: String,
        /// Weight exponent
        #[arg(long)]
        alpha: f64,
        /// σ grid: comma list or lo:hi:lin|log[:count]
        #[arg(long)]
        sigma_grid: String,
    },
    /// Recover f̂(σ) from the remainder sequence by Möbius inversion
    MobiusRecover {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        sigma: f64,
        /// Sequence length K (default 64)
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = SourceArg::Lattice)]
        source: SourceArg,
    },
    /// Remainder of the translated family over one period, plus the energy identity
    Sweep {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        sigma: f64,
        /// Number of translation samples over one period
        #[arg(long, default_value_t = 64)]
        ntau: usize,
    },
    /// Extremal-construction report: structural properties and bound sharpness
    Extremal {
        #[arg(long)]
        alpha: f64,
        /// Band edge for the sharpness certificate
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
    },
    /// Canonical error tables (1: e^-|x|, 2: x²e^-|x|, 3: 1/(1+x⁶))
    Table {
        #[arg(long)]
        index: u8,
        /// Override the h list (descending output order)
        #[arg(long)]
        hs: Option<String>,
    },
    /// Log–log slope of E vs h over a canonical table sub-range
    Order {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        h_lo: f64,
        #[arg(long)]
        h_hi: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Time,
    Spectral,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Fourier,
    Difference,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Lattice,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Properties,
    Sharpness,
    All,
}

enum Failure {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            // Bad inputs and unmet preconditions exit 2; failures of the
            // numerics themselves exit 3.
            ExitCode::from(if e.is_precondition() { 2 } else { 3 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    let out_path = cli.out.clone().or_else(|| cfg.out.clone());
    let (table, json) = dispatch(&cli.command, &cfg)?;
    output::emit(cli.format, &table, &json, out_path.as_deref())?;
    Ok(())
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<(Table, serde_json::Value), Failure> {
    match cmd {
        Command::Quad { function, h, n, p } => cmd_quad(cfg, function, *h, *n, *p),
        Command::Remainder { function, h, side } => cmd_remainder(cfg, function, *h, *side),
        Command::Modulus { function, r, deltas } => cmd_modulus(cfg, function, *r, deltas),
        Command::Bounds { function, h_grid, kinds, alpha, r, s } => {
            cmd_bounds(cfg, function, h_grid, kinds, *alpha, *r, *s)
        }
        Command::Riesz { function, alpha, t, method } => {
            cmd_riesz(cfg, function, *alpha, *t, *method)
        }
        Command::Dist { function, alpha, sigma_grid } => cmd_dist(function, *alpha, sigma_grid),
        Command::MobiusRecover { function, sigma, k, source } => {
            cmd_mobius(cfg, function, *sigma, *k, *source)
        }
        Command::Sweep { function, sigma, ntau } => cmd_sweep(cfg, function, *sigma, *ntau),
        Command::Extremal { alpha, sigma, check } => cmd_extremal(cfg, *alpha, *sigma, *check),
        Command::Table { index, hs } => cmd_table(*index, hs.as_deref()),
        Command::Order { function, h_lo, h_hi } => cmd_order(function, *h_lo, *h_hi),
    }
}

// ---------------------------------------------------------------------------
// quad / remainder
// ---------------------------------------------------------------------------

fn cmd_quad(
    cfg: &RunConfig,
    function: &str,
    h: f64,
    n: Option<u64>,
    p: Option<f64>,
) -> Result<(Table, serde_json::Value), Failure> {
    let pair = corpus::by_name(function)?;
    let n = match n.or(cfg.n) {
        Some(n) => n,
        None => quadrature::default_n(&pair.time, h)?,
    };
    let res = quadrature::trapezoidal_sum(&pair.time, h, n)?;
    let e_norm = p.and_then(|p| res.error.map(|e| e / h.powf(p)));

    let mut t = Table::new(&["h", "S", "E", "E_norm"]);
    t.push(vec![
        Cell::Float(res.h),
        Cell::Float(res.value),
        res.error.map_or(Cell::Empty, Cell::Float),
        e_norm.map_or(Cell::Empty, Cell::Float),
    ]);
    let j = json!({
        "command": "quad",
        "function": function,
        "h": num(res.h),
        "n": res.n,
        "S": num(res.value),
        "E": opt_num(res.error),
        "E_norm": opt_num(e_norm),
        "truncation_bound": opt_num(res.truncation_bound),
    });
    Ok((t, j))
}

fn cmd_remainder(
    cfg: &RunConfig,
    function: &str,
    h: f64,
    side: SideArg,
) -> Result<(Table, serde_json::Value), Failure> {
    let pair = corpus::by_name(function)?;
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("step must be positive and finite, got {h}")).into());
    }
    let sigma = 2.0 * std::f64::consts::PI / h;

    let time = match side {
        SideArg::Time | SideArg::Both => Some(quadrature::remainder_exact(&pair, h, None)?),
        SideArg::Spectral => None,
    };
    let spec = match side {
        SideArg::Spectral | SideArg::Both => {
            Some(spectral::remainder_spectral(&pair.freq, sigma, cfg.k)?)
        }
        SideArg::Time => None,
    };

    let mut t = Table::new(&["side", "h", "sigma", "value", "value_im", "k", "tail_bound"]);
    if let Some(r) = time {
        t.push(vec![
            Cell::Text("time".into()),
            Cell::Float(h),
            Cell::Float(sigma),
            Cell::Float(r),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    if let Some(s) = &spec {
        t.push(vec![
            Cell::Text("spectral".into()),
            Cell::Float(h),
            Cell::Float(sigma),
            Cell::Float(s.value.re),
            Cell::Float(s.value.im),
            Cell::Int(s.k),
            s.tail_bound.map_or(Cell::Empty, Cell::Float),
        ]);
    }
    let abs_diff = match (time, &spec) {
        (Some(r), Some(s)) => Some((r - s.value.re).abs()),
        _ => None,
    };
    if let Some(d) = abs_diff {
        t.push(vec![
            Cell::Text("abs_diff".into()),
            Cell::Float(h),
            Cell::Float(sigma),
            Cell::Float(d),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    let j = json!({
        "command": "remainder",
        "function": function,
        "h": num(h),
        "sigma": num(sigma),
        "time": opt_num(time),
        "spectral": spec.as_ref().map(|s| json!({
            "value_re": num(s.value.re),
            "value_im": num(s.value.im),
            "k": s.k,
            "tail_bound": opt_num(s.tail_bound),
        })),
        "abs_diff": opt_num(abs_diff),
    });
    Ok((t, j))
}

// ---------------------------------------------------------------------------
// modulus / bounds
// ---------------------------------------------------------------------------

fn cmd_modulus(
    cfg: &RunConfig,
    function: &str,
    r: u32,
    deltas: &str,
) -> Result<(Table, serde_json::Value), Failure> {
    let pair = corpus::by_name(function)?;
    let grid = grid::parse_grid(deltas)?;
    let profile = ModulusProfile::measure(&pair.time, r, &grid, 8, cfg.tol)?;

    let mut t = Table::new(&["delta", "omega"]);
    let mut rows = Vec::new();
    for (&d, &w) in profile.deltas.iter().zip(&profile.values) {
        t.push(vec![Cell::Float(d), Cell::Float(w)]);
        rows.push(json!({ "delta": num(d), "omega": num(w) }));
    }
    let j = json!({
        "command": "modulus",
        "function": function,
        "r": r,
        "rows": rows,
    });
    Ok((t, j))
}

fn parse_kinds(spec: &str) -> Result<Vec<BoundKind>, Error> {
    if spec.trim() == "all" {
        return Ok(BoundKind::ALL.to_vec());
    }
    let mut kinds = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let found = BoundKind::ALL.iter().find(|k| k.label() == part);
        match found {
            Some(&k) => kinds.push(k),
            None => {
                let labels: Vec<_> = BoundKind::ALL.iter().map(|k| k.label()).collect();
                return Err(Error::Domain(format!(
                    "unknown bound kind `{part}`; expected `all` or any of {}",
                    labels.join(", ")
                )));
            }
        }
    }
    Ok(kinds)
}

fn eval_bound(
    pair: &FunctionPair,
    kind: BoundKind,
    alpha: f64,
    r: u32,
    s: u32,
    h: f64,
    tol: f64,
) -> Result<Option<RemainderBound>, Error> {
    let opts = FractionalOptions { grid_n: 8, tol, domain_radius: None };
    let res = match kind {
        BoundKind::ModulusSeries => {
            // The truncated series is a guaranteed bound only once its tail
            // has visibly converged; otherwise report it as unavailable.
            bounds::bound_modulus_series(&pair.time, r, h, 48, 8, tol)
                .map(|(b, converged)| if converged { Some(b) } else { None })
        }
        BoundKind::SobolevModulus => bounds::bound_sobolev(pair, s, r, h, false, 8, tol).map(Some),
        BoundKind::SobolevNorm => bounds::bound_sobolev(pair, s, r, h, true, 8, tol).map(Some),
        BoundKind::FractionalModulus => {
            bounds::bound_fractional(pair, alpha, r, h, false, opts).map(Some)
        }
        BoundKind::FractionalNorm => {
            bounds::bound_fractional(pair, alpha, r, h, true, opts).map(Some)
        }
        BoundKind::DistanceInteger => bounds::bound_distance(pair, s as f64, h, true, None).map(Some),
        BoundKind::DistanceFractional => {
            bounds::bound_distance(pair, alpha, h, false, None).map(Some)
        }
    };
    match res {
        Ok(b) => Ok(b),
        // A bound whose hypotheses the function does not meet is "not
        // applicable" in a sweep, not a failure.
        Err(e) if e.is_precondition() => Ok(None),
        Err(e) => Err(e),
    }
}

fn cmd_bounds(
    cfg: &RunConfig,
    function: &str,
    h_grid: &str,
    kinds: &str,
    alpha: f64,
    r: u32,
    s: u32,
) -> Result<(Table, serde_json::Value), Failure> {
    let pair = corpus::by_name(function)?;
    let hs = grid::parse_grid(h_grid)?;
    let kinds = parse_kinds(kinds)?;

    let mut columns: Vec<String> = vec!["h".into(), "R_abs".into()];
    for k in &kinds {
        columns.push(k.label().into());
        columns.push(format!("{}_over_R", k.label()));
    }
    let mut t = Table { columns, rows: Vec::new() };
    let mut json_rows = Vec::new();
    for &h in &hs {
        let r_abs = quadrature::remainder_exact(&pair, h, None)?.abs();
        let mut row = vec![Cell::Float(h), Cell::Float(r_abs)];
        let mut per_kind = serde_json::Map::new();
        for &kind in &kinds {
            match eval_bound(&pair, kind, alpha, r, s, h, cfg.tol)? {
                Some(b) => {
                    row.push(Cell::Float(b.value));
                    row.push(Cell::Float(b.value / r_abs));
                    per_kind.insert(
                        kind.label().into(),
                        json!({
                            "value": num(b.value),
                            "ratio": num(b.value / r_abs),
                            "constant": num(b.constant),
                            "order_exponent": num(b.order_exponent),
                            "measurement": num(b.measurement),
                        }),
                    );
                }
                None => {
                    row.push(Cell::Empty);
                    row.push(Cell::Empty);
                    per_kind.insert(kind.label().into(), serde_json::Value::Null);
                }
            }
        }
        t.push(row);
        json_rows.push(json!({
            "h": num(h),
            "r_abs": num(r_abs),
            "bounds": serde_json::Value::Object(per_kind),
        }));
    }
    let j = json!({
        "command": "bounds",
        "function": function,
        "alpha": num(alpha),
        "r": r,
        "s": s,
        "rows": json_rows,
    });
    Ok((t, j))
}

// ---------------------------------------------------------------------------
// riesz / dist
// ---------------------------------------------------------------------------

fn cmd_riesz(
    cfg: &RunConfig,
    function: &str,
    alpha: f64,
    t_point: f64,
    method: MethodArg,
) -> Result<(Table, serde_json::Value), Failure> {
    let pair = corpus::by_name(function)?;
    let fourier = match method {
        MethodArg::Fourier | MethodArg::Both => {
            Some(fractional::riesz_fourier(&pair, alpha, t_point, cfg.tol)?)
        }
        MethodArg::Difference => None,
    };
    let difference = match method {
        MethodArg::Difference | MethodArg::Both => {
            let spec = RieszSpec::new(alpha)?;
            Some(fractional::riesz_difference(&pair.time, &spec, t_point)?)
        }
        MethodArg::Fourier => None,
    };
    let abs_diff = match (fourier, difference) {
        (Some(a), Some(b)) => Some((a - b).abs()),
        _ => None,
    };

    let mut t = Table::new(&["method", "alpha", "t", "value"]);
    if let Some(v) = fourier {
        t.push(vec![
            Cell::Text("fourier".into()),
            Cell::Float(alpha),
            Cell::Float(t_point),
            Cell::Float(v),
        ]);
    }
    if let Some(v) = difference {
        t.push(vec![
            Cell::Text("difference".into()),
            Cell::Float(alpha),
            Cell::Float(t_point),
            Cell::Float(v),
        ]);
    }
    if let Some(d) = abs_diff {
        t.push(vec![
            Cell::Text("abs_diff".into()),
            Cell::Float(alpha),
            Cell::Float(t_point),
            Cell::Float(d),
        ]);
    }
    let j = json!({
        "command": "riesz",
        "function": function,
        "alpha": num(alpha),
        "t": num(t_point),
        "fourier": opt_num(fourier),
        "difference": opt_num(difference),
        "abs_diff": opt_num(abs_diff),
    });
    Ok((t, j))
}

fn cmd_dist(
    function: &str,
    alpha: f64,
    sigma_grid: &str,
) -> Result<(Table, serde_json::Value), Failure> {
    let pair = corpus::by_name(function)?;
    let sigmas = grid::parse_grid(sigma_grid)?;

    let mut t = Table::new(&["sigma", "dist", "argmax", "tail_slack"]);
    let mut rows = Vec::new();
    for &sigma in &sigmas {
        let q = DistanceQuery::new(alpha, sigma);
        let d = dist_bernstein(&pair.freq, &q)?;
        t.push(vec![
            Cell::Float(sigma),
            Cell::Float(d.value),
            Cell::Float(d.argmax),
            Cell::Float(d.tail_slack),
        ]);
        rows.push(json!({
            "sigma": num(sigma),
            "dist": num(d.value),
            "argmax": num(d.argmax),
            "tail_slack": num(d.tail_slack),
        }));
    }
    let j = json!({
        "command": "dist",
        "function": function,
        "alpha": num(alpha),
        "rows": rows,
    });
    Ok((t, j))
}

// ---------------------------------------------------------------------------
// mobius-recover / sweep
// ---------------------------------------------------------------------------

fn cmd_mobius(
    cfg: &RunConfig,
    function: &str,
    sigma: f64,
    k: Option<u64>,
    source: SourceArg,
) -> Result<(Table, serde_json::Value), Failure> {
    let pair = corpus::by_name(function)?;
    let k = k.or(cfg.k).unwrap_or(64);
    let seq = match source {
        SourceArg::Lattice => moebius::remainder_sequence_exact(&pair, sigma, k)?,
        SourceArg::Spectral => moebius::remainder_sequence_spectral(&pair, sigma, k)?,
    };
    let rec = moebius::recover_spectrum(&seq)?;
    let analytic = pair.freq.eval(sigma)?.re;
    let abs_error = (rec.value - analytic).abs();
    let source_name = match source {
        SourceArg::Lattice => "lattice",
        SourceArg::Spectral => "spectral",
    };

    let mut t = Table::new(&[
        "sigma",
        "k",
        "source",
        "recovered",
        "tail_estimate",
        "analytic",
        "abs_error",
    ]);
    t.push(vec![
        Cell::Float(sigma),
        Cell::Int(k),
        Cell::Text(source_name.into()),
        Cell::Float(rec.value),
        Cell::Float(rec.tail_estimate),
        Cell::Float(analytic),
        Cell::Float(abs_error),
    ]);
    let j = json!({
        "command": "mobius-recover",
        "function": function,
        "sigma": num(sigma),
        "k": k,
        "source": source_name,
        "recovered": num(rec.value),
        "tail_estimate": num(rec.tail_estimate),
        "analytic": num(analytic),
        "abs_error": num(abs_error),
    });
    Ok((t, j))
}

fn cmd_sweep(
    cfg: &RunConfig,
    function: &str,
    sigma: f64,
    ntau: usize,
) -> Result<(Table, serde_json::Value), Failure> {
    let pair = corpus::by_name(function)?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("sigma must be positive and finite, got {sigma}")).into());
    }
    if ntau < 4 {
        return Err(Error::Domain(format!("need at least 4 samples, got {ntau}")).into());
    }
    let period = 2.0 * std::f64::consts::PI / sigma;
    let taus: Vec<f64> = (0..ntau).map(|j| period * j as f64 / ntau as f64).collect();
    let sweep = moebius::translation_sweep(&pair, sigma, &taus, cfg.k)?;
    let parseval = moebius::parseval_check(&pair, sigma, ntau, cfg.k)?;

    let mut t = Table::new(&["tau", "R_re", "R_im"]);
    let mut rows = Vec::new();
    for (&tau, z) in taus.iter().zip(&sweep) {
        t.push(vec![Cell::Float(tau), Cell::Float(z.re), Cell::Float(z.im)]);
        rows.push(json!({ "tau": num(tau), "re": num(z.re), "im": num(z.im) }));
    }
    let j = json!({
        "command": "sweep",
        "function": function,
        "sigma": num(sigma),
        "n_tau": ntau,
        "rows": rows,
        "parseval": {
            "mean_square": num(parseval.mean_square),
            "spectral_side": num(parseval.spectral_side),
            "relative_gap": num(parseval.relative_gap),
        },
    });
    Ok((t, j))
}

// ---------------------------------------------------------------------------
// extremal
// ---------------------------------------------------------------------------

fn cmd_extremal(
    cfg: &RunConfig,
    alpha: f64,
    sigma: f64,
    check: CheckArg,
) -> Result<(Table, serde_json::Value), Failure> {
    let mut e = ExtremalFunction::new(alpha)?;
    if let Some(j_max) = cfg.j_max {
        e = e.with_j_max(j_max)?;
    }

    let properties = match check {
        CheckArg::Properties | CheckArg::All => Some(verify_properties(&e)?),
        CheckArg::Sharpness => None,
    };
    let sharp = match check {
        CheckArg::Sharpness | CheckArg::All => Some(sharpness_check(&e, sigma)?),
        CheckArg::Properties => None,
    };

    let mut t = Table::new(&["id", "measured", "expected", "deviation", "tol", "pass"]);
    let mut prop_json = Vec::new();
    if let Some(props) = &properties {
        for p in props {
            t.push(vec![
                Cell::Text(p.id.into()),
                Cell::Float(p.measured),
                Cell::Float(p.expected),
                Cell::Float(p.deviation),
                Cell::Float(p.tol),
                Cell::Bool(p.pass),
            ]);
            prop_json.push(json!({
                "id": p.id,
                "detail": p.detail,
                "measured": num(p.measured),
                "expected": num(p.expected),
                "deviation": num(p.deviation),
                "tol": num(p.tol),
                "pass": p.pass,
            }));
        }
    }
    if let Some(s) = &sharp {
        let deviation = (s.ratio - 1.0).abs();
        t.push(vec![
            Cell::Text("sharpness_ratio".into()),
            Cell::Float(s.ratio),
            Cell::Float(1.0),
            Cell::Float(deviation),
            Cell::Float(1e-6),
            Cell::Bool(deviation <= 1e-6),
        ]);
    }
    let j = json!({
        "command": "extremal",
        "alpha": num(alpha),
        "sigma": num(sigma),
        "j_max": e.j_max,
        "properties": if properties.is_some() { serde_json::Value::Array(prop_json) } else { serde_json::Value::Null },
        "sharpness": sharp.as_ref().map(|s| json!({
            "lhs": num(s.lhs),
            "rhs": num(s.rhs),
            "ratio": num(s.ratio),
        })),
    });
    Ok((t, j))
}

// ---------------------------------------------------------------------------
// table / order
// ---------------------------------------------------------------------------

/// Compute the rows of a table spec concurrently, one worker per step size;
/// results keep the order of `spec.hs`.
fn table_rows(spec: &TableSpec) -> Result<Vec<tables::TableRow>, Error> {
    let results: Vec<Result<tables::TableRow, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = spec
            .hs
            .iter()
            .map(|&h| {
                let pair = spec.pair.clone();
                let n_rule = spec.n_rule;
                let normalize_exponent = spec.normalize_exponent;
                scope.spawn(move || {
                    let one = TableSpec { pair, hs: vec![h], n_rule, normalize_exponent };
                    tables::table(&one).map(|rows| rows[0])
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table worker panicked")).collect()
    });
    results.into_iter().collect()
}

fn table_report(
    index: u8,
    spec: &TableSpec,
) -> Result<(Table, serde_json::Value), Failure> {
    let rows = table_rows(spec)?;
    let mut t = Table::new(&["h", "S", "E", "E_norm"]);
    let mut json_rows = Vec::new();
    for row in &rows {
        t.push(vec![
            Cell::Float(row.h),
            Cell::Float(row.value),
            Cell::Float(row.error),
            row.normalized.map_or(Cell::Empty, Cell::Float),
        ]);
        json_rows.push(json!({
            "h": num(row.h),
            "n": row.n,
            "S": num(row.value),
            "E": num(row.error),
            "E_norm": opt_num(row.normalized),
            "below_fp_floor": row.below_fp_floor,
        }));
    }
    let j = json!({
        "command": "table",
        "index": index,
        "function": spec.pair.time.name.clone(),
        "rows": json_rows,
    });
    Ok((t, j))
}

fn cmd_table(index: u8, hs: Option<&str>) -> Result<(Table, serde_json::Value), Failure> {
    let mut spec = tables::canonical_table_spec(index)?;
    if let Some(hs) = hs {
        let mut grid = grid::parse_grid(hs)?;
        if grid.iter().any(|&h| !(h > 0.0)) {
            return Err(Error::Domain("table steps must be positive".into()).into());
        }
        grid.sort_by(|a, b| b.total_cmp(a));
        grid.dedup();
        spec.hs = grid;
    }
    table_report(index, &spec)
}

fn cmd_order(function: &str, h_lo: f64, h_hi: f64) -> Result<(Table, serde_json::Value), Failure> {
    let index = match function {
        "f1" => 1,
        "f2" => 2,
        "f3" => 3,
        other => {
            return Err(Error::Domain(format!(
                "order fits run on the canonical tables (f1, f2, f3), got `{other}`"
            ))
            .into())
        }
    };
    if !(h_lo > 0.0) || !(h_hi > h_lo) {
        return Err(
            Error::Domain(format!("need 0 < h_lo < h_hi, got {h_lo} and {h_hi}")).into(),
        );
    }
    let mut spec = tables::canonical_table_spec(index)?;
    spec.hs.retain(|&h| h >= h_lo && h <= h_hi);
    let rows = table_rows(&spec)?;
    let slope = tables::order_fit(&rows)?;
    let points = rows.iter().filter(|r| !r.below_fp_floor).count();

    let mut t = Table::new(&["function", "h_lo", "h_hi", "points", "slope"]);
    t.push(vec![
        Cell::Text(function.into()),
        Cell::Float(h_lo),
        Cell::Float(h_hi),
        Cell::Int(points as u64),
        Cell::Float(slope),
    ]);
    let j = json!({
        "command": "order",
        "function": function,
        "h_lo": num(h_lo),
        "h_hi": num(h_hi),
        "points": points,
        "slope": num(slope),
    });
    Ok((t, j))
}
