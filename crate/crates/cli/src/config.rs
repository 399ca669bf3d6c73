//! Run configuration: defaults, and `key=value` config-file overrides.

use poisson_quad::Error;
use std::path::PathBuf;

/// Knobs shared by every subcommand. Flags given on the command line win
/// over config-file values, which win over these defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Absolute tolerance handed to the quadrature-backed measurements.
    pub tol: f64,
    /// Override for the spectral truncation `K`.
    pub k: Option<u64>,
    /// Override for the lattice truncation `N`.
    pub n: Option<u64>,
    /// Override for the extremal construction's bump count.
    pub j_max: Option<u32>,
    /// Output path (same as `--out`).
    pub out: Option<PathBuf>,
    /// Every computation here is seedless and reproducible; the flag only
    /// exists so configs can state that expectation. `false` is rejected.
    pub deterministic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { tol: 1e-8, k: None, n: None, j_max: None, out: None, deterministic: true }
    }
}

impl RunConfig {
    /// Apply `key=value` lines (`#` starts a comment) on top of `self`.
    pub fn apply_file(&mut self, path: &std::path::Path) -> Result<(), Error> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Domain(format!("cannot read config `{}`: {e}", path.display()))
        })?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Domain(format!(
                    "config line {} is not `key=value`: `{raw}`",
                    lineno + 1
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "tol" => {
                    let t: f64 = parse(key, value)?;
                    if !(t > 0.0) || !t.is_finite() {
                        return Err(Error::Domain(format!(
                            "tol must be positive and finite, got {value}"
                        )));
                    }
                    self.tol = t;
                }
                "k" => self.k = Some(parse(key, value)?),
                "n" => self.n = Some(parse(key, value)?),
                "j_max" => self.j_max = Some(parse(key, value)?),
                "out" => self.out = Some(PathBuf::from(value)),
                "deterministic" => {
                    let d: bool = parse(key, value)?;
                    if !d {
                        return Err(Error::Domain(
                            "deterministic=false is not supported: every computation is \
                             seedless, so nondeterminism cannot be provided"
                                .into(),
                        ));
                    }
                    self.deterministic = true;
                }
                other => {
                    return Err(Error::Domain(format!(
                        "unknown config key `{other}` (known: tol, k, n, j_max, out, deterministic)"
                    )))
                }
            }
        }
        Ok(())
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Error> {
    value
        .parse()
        .map_err(|_| Error::Domain(format!("config key `{key}`: cannot parse `{value}`")))
}
