//! Upper bound on the error exponent of expurgated regular `(c, d)` LDPC
//! ensembles over the binary erasure channel, together with the finite-length
//! machinery used to check every analytic building block by brute force.
//!
//! Module map:
//!
//! - [`numerics`]: entropy, multinomials, convex minimization, root finding.
//! - [`genfunc`]: enumeration polynomials, exact power coefficients, growth rates.
//! - [`enumerators`]: stopping-set probabilities and average spectra, `alpha0`.
//! - [`exponent`]: the exponents `E1`, `E2`, `E` and the bound curve.
//! - [`confidence`]: the concentration constant and per-point confidence.
//! - [`lab`]: sampled graphs, census, peeling decoder and property checkers.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod confidence;
pub mod enumerators;
pub mod error;
pub mod exponent;
pub mod genfunc;
pub mod lab;
pub mod numerics;
pub mod par;

pub use error::{Error, Result};
