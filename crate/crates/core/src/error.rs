use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {what} = {requested} exceeds the cap {cap}")]
    Resource {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    /// A query needs more primes than the table holds.
    #[error("out of range: {what}; rebuild the prime table with limit >= {required_limit}")]
    OutOfRange { what: String, required_limit: u64 },

    #[error("s = {0} is too close to the pole at s = 1")]
    PoleProximity(f64),

    #[error("no sign change on [{lo}, {hi}] (g(lo) = {g_lo}, g(hi) = {g_hi})")]
    Bracket {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("set has {size} members, above the exact-check cap of {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("smoothness violated: {0}")]
    Smoothness(String),

    #[error("bound not applicable: {0}")]
    Inapplicable(String),

    /// An asserted structural property failed; this is a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
