//! Cardinality-constrained maximization of monotone submodular set functions.
//!
//! The crate is organized around a single trait, [`SetFunction`], which assigns
//! a real value to subsets of a finite ground set `{0, .., n-1}`. On top of it:
//!
//! - [`objectives`]: concrete function families (facility location coverage,
//!   modular weights, cardinality profiles).
//! - [`solve`]: greedy, lazy greedy, and stochastic greedy maximizers under a
//!   cardinality budget `k`, with per-step traces and evaluation accounting.
//! - [`oracle`]: exact brute-force optimum by enumerating all `C(n, k)` subsets.
//! - [`check`]: property verification (monotonicity, two equivalent
//!   submodularity tests, and a telescoping-sum identity), exhaustive or
//!   sampled, with counterexample witnesses.
//!
//! With the `parallel` feature (on by default) the oracle, the exhaustive
//! checkers, and repeated-trial drivers partition their work across threads
//! via rayon; results are bit-identical to the sequential paths because every
//! reduction breaks ties on a total order.

pub mod check;
pub mod error;
pub mod function;
pub mod objectives;
pub mod oracle;
pub mod rng;
pub mod set;
pub mod solve;

pub use error::Error;
pub use function::{Counting, SetFunction};
pub use set::{GroundSet, Subset};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
