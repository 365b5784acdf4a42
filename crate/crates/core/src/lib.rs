//! Computational toolkit for k-primitive sets.
//!
//! * [`primes`]: sieve-backed prime table, Chebyshev theta and prime sums.
//! * [`analytic`]: Riemann and prime zeta, the critical-exponent equation
//!   for primitive sets, and the Erdős sum `sum_p 1/(p log p)`.
//! * [`exponents`]: the exponent schedules for k-primitive, lcm and strong
//!   variants, with their explicit prime-product bounds.
//! * [`primitivity`]: exact predicates for the three notions, with witnesses.
//! * [`structure`]: block splitting and the derived maps used to pass from
//!   k to k-1.
//! * [`search`]: branch-and-bound maximisation of `sum n^-lambda` over
//!   primitive subsets of `[2, N]`, and a lower-bound construction.
//! * [`verify`]: the inequality harness.

pub mod analytic;
pub mod error;
pub mod exponents;
pub mod primes;
pub mod primitivity;
mod quad;
pub mod report;
pub mod search;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use exponents::{schedule, ExponentSchedule, Variant};
pub use primes::PrimeTable;
pub use report::{MarginReport, Status};
