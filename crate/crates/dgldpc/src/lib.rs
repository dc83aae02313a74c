//! Asymptotic weight-distribution analysis of doubly-generalized LDPC
//! (D-GLDPC) code ensembles.
//!
//! The crate computes the growth rate G(alpha) of the ensemble-average weight
//! spectrum by solving a 4x4 saddle-point system per weight, classifies
//! ensembles through the weight-2 parameters C and V, and ships an
//! independent exact-combinatorics oracle suite (big-integer coefficient
//! extraction, exact finite-n expected spectra, full edge-permutation
//! enumeration, and direct maximization of the underlying objective) that
//! certifies the solver at desk scale.
//!
//! Modules:
//! - [`gf2`]: binary linear component codes and exact weight enumerators.
//! - [`poly`]: arbitrary-precision polynomial powers and coefficient
//!   extraction.
//! - [`eval`]: log-domain evaluation of enumerator functions.
//! - [`ensemble`]: the ensemble model and its derived scalars.
//! - [`saddle`]: the growth-rate solver, sweeps, and the relative minimum
//!   distance.
//! - [`oracle`]: independent verification oracles.
//! - [`config`]: JSON ensemble descriptions used by the CLI.

pub mod config;
pub mod ensemble;
pub mod error;
pub mod eval;
pub mod gf2;
pub mod oracle;
pub mod poly;
pub mod saddle;

#[cfg(test)]
pub(crate) mod fixtures;

pub use error::{Error, Result};
