//! Decision procedures, sieves and censuses for f-practical numbers.
//!
//! A positive integer `n` is *f-practical* for an arithmetic function `f`
//! when every integer `m` with `1 <= m <= S_f(n)` is a sum of `f(d)` over a
//! set of distinct divisors `d` of `n`, where `S_f(n)` is the sum of `f(d)`
//! over all divisors. With `f` the identity this is the classical notion of
//! a practical number; with `f` the Euler totient it is the phi-practical
//! numbers that classify the degrees of divisors of `x^n - 1`.
//!
//! The crate is organised in five layers:
//!
//! * [`arith`] — factorization, divisor enumeration and the catalog of
//!   arithmetic functions (`identity`, `phi`, `phi*`, Carmichael `lambda`,
//!   `tau`, `sigma`, `omega`, `Omega`, `v_p`, `h`, `s`, `a1`, the `f_m`
//!   family) together with their divisor sums.
//! * [`practicality`] — the exact decision procedures: the contiguous-cover
//!   criterion, f-practical and weakly f-practical tests, prime-power
//!   extension, bounded scans, the bounded-multiplicity representation
//!   procedure and the knapsack-based lambda-practical test.
//! * [`census`] — a smallest-prime-factor sieve and chunked, parallel
//!   counting of f-practical numbers with ratio tables and density tools.
//! * [`verify`] — a registry of named verification suites that exercise the
//!   implication and universality properties exhaustively up to bounds.
//! * [`config`] — user-defined arithmetic functions loaded from TOML.

pub mod arith;
pub mod census;
pub mod config;
mod error;
pub mod practicality;
pub mod verify;

pub use arith::{Factorization, FunctionKind, FunctionSpec};
pub use census::{CensusReport, DensityEstimate, SpfSieve};
pub use error::Error;
pub use practicality::{PracticalityVerdict, ScanReport};
pub use verify::SuiteResult;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
