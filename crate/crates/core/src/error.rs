//! Error type shared by every module in the crate.
//!
//! Errors fall into two classes: *precondition* failures (the request was
//! malformed or the operation does not apply to the given function) and
//! *numerical* failures (the computation ran but could not reach the
//! requested accuracy). The split is exposed through [`Error::is_precondition`]
//! so callers (in particular the CLI) can map the classes to distinct exit
//! codes.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    Domain(String),
    /// A sampled function value was NaN or infinite.
    NonFiniteSample { x: f64, value: f64 },
    /// The operation needs a decay hint on the time side and none was given.
    DecayHintMissing(String),
    /// The operation needs spectral decay information and none was given.
    DecayPowerMissing(String),
    /// The spectrum was expected to be even and real but is not.
    NotEvenReal { v: f64, detail: String },
    /// The declared decay is too slow for the integral to exist.
    NonIntegrableDecay(String),
    /// A derivative of the requested order is not registered on the pair.
    DerivativeUnavailable { order: u32, name: String },
    /// The fractional derivative cannot be materialized from the spectrum.
    RieszUnavailable(String),
    /// An iterative computation failed its internal consistency check.
    NoConvergence { detail: String, residual: f64 },
    /// The remainder sequence decays too slowly for spectrum recovery.
    InsufficientDecay { tail: f64, scale: f64 },
    /// The weighted supremum over the spectrum is not finite.
    UnboundedWeight(String),
    /// A least-squares fit was requested on degenerate data.
    DegenerateFit(String),
    /// No corpus entry with the given name.
    UnknownFunction(String),
    /// Adaptive quadrature exhausted its subdivision budget.
    QuadratureBudget { achieved: f64, requested: f64 },
}

impl Error {
    /// `true` for errors that reject the request up front (bad arguments,
    /// inapplicable operation); `false` for failures of the numerics.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::DecayHintMissing(_)
                | Error::DecayPowerMissing(_)
                | Error::NotEvenReal { .. }
                | Error::NonIntegrableDecay(_)
                | Error::DerivativeUnavailable { .. }
                | Error::RieszUnavailable(_)
                | Error::UnboundedWeight(_)
                | Error::UnknownFunction(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonFiniteSample { x, value } => {
                write!(f, "non-finite sample: f({x}) = {value}")
            }
            Error::DecayHintMissing(name) => {
                write!(f, "no time-side decay hint on `{name}`")
            }
            Error::DecayPowerMissing(name) => {
                write!(f, "no spectral decay information on `{name}`")
            }
            Error::NotEvenReal { v, detail } => {
                write!(f, "spectrum not even and real at v = {v}: {detail}")
            }
            Error::NonIntegrableDecay(msg) => write!(f, "non-integrable decay: {msg}"),
            Error::DerivativeUnavailable { order, name } => {
                write!(f, "derivative of order {order} not registered on `{name}`")
            }
            Error::RieszUnavailable(msg) => {
                write!(f, "fractional derivative unavailable: {msg}")
            }
            Error::NoConvergence { detail, residual } => {
                write!(f, "no convergence: {detail} (residual {residual:.3e})")
            }
            Error::InsufficientDecay { tail, scale } => write!(
                f,
                "remainder sequence tail estimate {tail:.3e} too large relative to result scale {scale:.3e}"
            ),
            Error::UnboundedWeight(msg) => write!(f, "unbounded weighted spectrum: {msg}"),
            Error::DegenerateFit(msg) => write!(f, "degenerate fit: {msg}"),
            Error::UnknownFunction(name) => write!(f, "unknown function `{name}`"),
            Error::QuadratureBudget { achieved, requested } => write!(
                f,
                "quadrature budget exhausted: error estimate {achieved:.3e} > requested {requested:.3e}"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
