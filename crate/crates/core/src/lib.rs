//! Exact-arithmetic toolkit for entropy envelopes over sample spaces,
//! power sets, and permutation event spaces.
//!
//! The crate computes Shannon, Deng, and random-permutation-set (RPS)
//! entropies together with their maximizing distributions and the exact
//! counts ("envelopes") inside the maximum-entropy logarithms: `N`,
//! `3^N - 2^N`, and `S(N) = sum A(N,u)(S_A(u)-1)`. The approximation
//! layer brackets `e * (N!)^2`, checks the sandwich bounds that pin
//! `S(N)` against it, and reproduces the reference comparison tables;
//! the oracle layer re-derives the closed forms by brute force.
//!
//! All combinatorial quantities are exact big integers, `e` and `pi` are
//! handled as rational brackets, and entropies are reported as f64 bits.

pub mod approx;
pub mod belief;
pub mod combinatorics;
pub mod counting;
pub mod entropy;
pub mod error;
pub mod interval;
pub mod log2;
pub mod oracle;
mod par;
pub mod tables;
pub mod validation;

pub use error::{Error, Result};

/// Default cap on frame sizes for operations that enumerate event spaces
/// (`|PES(8)| = 109_601` keeps brute-force checks sub-second).
pub const ENUMERATION_CAP: usize = 8;
