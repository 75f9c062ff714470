//! Smallest eigenvalue gaps of the Gaussian orthogonal ensemble.
//!
//! The crate has two halves. The exact side ([`skewlin`], [`hermite`],
//! [`loggas`]) evaluates Pfaffians, oscillator-function expansions and
//! one/two-component log-gas partition functions, and checks the identity
//! `G_{n-2k,k} = 4^{-k} G_n`. The statistical side ([`ensemble`], [`gapstats`])
//! samples GOE / Gβ-ensemble spectra from a reproducible counter-based stream
//! and measures normalized smallest gaps against their Poisson limit.

pub mod ensemble;
pub mod error;
pub mod gapstats;
pub mod hermite;
pub mod loggas;
pub mod scalar;
pub mod skewlin;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

/// Double-precision antisymmetric matrix.
pub type SkewMatrixF64 = skewlin::SkewMatrix<f64>;
/// Exact rational antisymmetric matrix.
pub type RationalSkewMatrix = skewlin::SkewMatrix<num_rational::BigRational>;
/// Double-precision polynomial.
pub type PolyF64 = skewlin::PolyCoeffs<f64>;
/// Integer-exact polynomial (Hermite and `D_n` coefficients).
pub type ExactPoly = skewlin::PolyCoeffs<num_bigint::BigInt>;
/// Double-precision oscillator-basis expansion.
pub type WaveExpansionF64 = hermite::WaveExpansion<f64>;
/// Double-precision Gauss–Hermite rule.
pub type QuadratureRuleF64 = hermite::QuadratureRule<f64>;
