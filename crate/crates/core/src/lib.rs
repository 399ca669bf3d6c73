//! Quadrature error analysis on the Fourier side.
//!
//! The infinite trapezoidal rule `h·Σ_k f(hk)` differs from `∫f` by an
//! aliasing sum over the dual lattice: `R = -√(2π)·Σ_{k≠0} f̂(kσ)` with
//! `σ = 2π/h` (transform convention `f̂(v) = (2π)^{-1/2}∫f(u)e^{-iuv}du`).
//! This crate computes both sides exactly, derives guaranteed remainder
//! bounds from smoothness measurements (moduli of smoothness, Sobolev and
//! fractional Riesz derivatives, weighted spectral distances), recovers
//! individual spectrum values from remainder sequences by Möbius inversion,
//! and constructs extremal functions that attain the bounds.

pub mod bounds;
pub mod corpus;
pub mod distance;
pub mod error;
pub mod extremal;
pub mod fit;
pub mod fractional;
pub mod integrate;
pub mod moebius;
pub mod quadrature;
pub mod smoothness;
pub mod spectral;
pub mod sum;
pub mod tables;

pub use error::{Error, Result};
