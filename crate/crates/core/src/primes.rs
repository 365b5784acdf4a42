//! Prime table, Chebyshev's theta function and explicit prime sums.
//!
//! All sums run over primes in ascending order so results are reproducible
//! bit-for-bit across platforms.

use crate::error::{Error, Result};
use crate::report::MarginReport;

/// Largest sieve bound accepted by [`PrimeTable::sieve`].
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

/// Upper constant in `theta(x) < 1.01624 x` (valid for all x > 0).
pub const THETA_UPPER_CONST: f64 = 1.01624;

/// Smallest x for which `x (1 - 1/log x) < theta(x)` is claimed.
pub const THETA_LOWER_FROM: f64 = 41.0;

/// Immutable sieve-backed table of the primes up to `limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    theta_prefix: Vec<f64>,
}

impl PrimeTable {
    /// Sieves the primes up to `limit` (inclusive) with the default cap.
    pub fn sieve(limit: u64) -> Result<Self> {
        Self::sieve_with_cap(limit, DEFAULT_SIEVE_CAP)
    }

    pub fn sieve_with_cap(limit: u64, cap: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!("sieve limit must be >= 2, got {limit}")));
        }
        if limit > cap {
            return Err(Error::Resource {
                what: "sieve limit",
                requested: limit,
                cap,
            });
        }
        let primes = odd_sieve(limit);
        let mut theta_prefix = Vec::with_capacity(primes.len());
        let mut acc = 0.0;
        for &p in &primes {
            acc += (p as f64).ln();
            theta_prefix.push(acc);
        }
        Ok(PrimeTable {
            limit,
            primes,
            theta_prefix,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `theta(p_i)` for every prime in the table.
    pub fn theta_prefix(&self) -> &[f64] {
        &self.theta_prefix
    }

    /// The k-th prime, 1-indexed (`p_1 = 2`).
    pub fn nth_prime(&self, k: usize) -> Result<u64> {
        if k == 0 {
            return Err(Error::Domain("prime index is 1-based; k = 0 given".into()));
        }
        self.primes.get(k - 1).copied().ok_or_else(|| Error::OutOfRange {
            what: format!("p_{k} is beyond the {} primes up to {}", self.primes.len(), self.limit),
            required_limit: nth_prime_upper_bound(k as u64),
        })
    }

    /// Number of primes `<= x`; `x` must not exceed the table limit.
    pub fn prime_count(&self, x: f64) -> Result<usize> {
        self.check_x(x)?;
        Ok(self.count_le(x))
    }

    /// The primes `<= x` as a slice.
    pub fn primes_up_to(&self, x: f64) -> Result<&[u64]> {
        self.check_x(x)?;
        Ok(&self.primes[..self.count_le(x)])
    }

    /// Chebyshev's function `theta(x) = sum_{p <= x} log p`.
    pub fn chebyshev_theta(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        let n = self.count_le(x);
        Ok(if n == 0 { 0.0 } else { self.theta_prefix[n - 1] })
    }

    /// `sum_{p <= x} p^(-lam)`.
    pub fn prime_power_sum(&self, x: f64, lam: f64) -> Result<f64> {
        if !lam.is_finite() {
            return Err(Error::Domain(format!("exponent must be finite, got {lam}")));
        }
        Ok(self.primes_up_to(x)?.iter().map(|&p| (p as f64).powf(-lam)).sum())
    }

    /// `sum_{p <= x} log(p) / p^lam` for `0 < lam < 1`, the range where the
    /// two-sided bound of [`check_log_sum_sandwich`] is claimed.
    pub fn prime_log_sum(&self, x: f64, lam: f64) -> Result<f64> {
        if !(lam > 0.0 && lam < 1.0) {
            return Err(Error::Domain(format!(
                "prime_log_sum needs 0 < lam < 1, got {lam}; use prime_log_sum_relaxed"
            )));
        }
        self.prime_log_sum_relaxed(x, lam)
    }

    /// The same sum for any finite exponent.
    pub fn prime_log_sum_relaxed(&self, x: f64, lam: f64) -> Result<f64> {
        if !lam.is_finite() {
            return Err(Error::Domain(format!("exponent must be finite, got {lam}")));
        }
        Ok(self
            .primes_up_to(x)?
            .iter()
            .map(|&p| {
                let pf = p as f64;
                pf.ln() * pf.powf(-lam)
            })
            .sum())
    }

    fn count_le(&self, x: f64) -> usize {
        self.primes.partition_point(|&p| (p as f64) <= x)
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain(format!("x must be >= 0, got {x}")));
        }
        if x > self.limit as f64 {
            return Err(Error::OutOfRange {
                what: format!("x = {x} exceeds the table limit {}", self.limit),
                required_limit: x.ceil() as u64,
            });
        }
        Ok(())
    }
}

/// An upper bound for `p_k`: `k (log k + log log k)` for k >= 6.
pub fn nth_prime_upper_bound(k: u64) -> u64 {
    if k < 6 {
        return 13;
    }
    let kf = k as f64;
    (kf * (kf.ln() + kf.ln().ln())).ceil() as u64
}

fn odd_sieve(limit: u64) -> Vec<u64> {
    // index i stands for 2i + 1
    let n = ((limit - 1) / 2 + 1) as usize;
    let mut composite = vec![false; n];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < n {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2];
    primes.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    primes
}

/// Checks `x (1 - 1/log x) < theta(x) < 1.01624 x` at each x. The lower
/// bound is reported as not applicable for x < 41.
pub fn check_rs_theta_bounds(table: &PrimeTable, xs: &[f64]) -> Result<Vec<MarginReport>> {
    let mut out = Vec::with_capacity(2 * xs.len());
    for &x in xs {
        let theta = table.chebyshev_theta(x)?;
        let lower = if x > 1.0 { x * (1.0 - 1.0 / x.ln()) } else { 0.0 };
        out.push(
            MarginReport::less("theta_lower", lower, theta)
                .with_x(x)
                .term("theta", theta)
                .term("lower_bound", lower)
                .claim("x (1 - 1/log x) < theta(x) for x >= 41")
                .not_applicable_unless(x >= THETA_LOWER_FROM),
        );
        let upper = THETA_UPPER_CONST * x;
        out.push(
            MarginReport::less("theta_upper", theta, upper)
                .with_x(x)
                .term("theta", theta)
                .term("upper_bound", upper)
                .claim("theta(x) < 1.01624 x for x > 0")
                .not_applicable_unless(x > 0.0),
        );
    }
    Ok(out)
}

/// Checks `x^(1-lam) (1 - 1/log x) <= sum_{p<=x} log p / p^lam <= 1.01624/(1-lam) x^(1-lam)`
/// for every pair on the grid. Both sides are reported; x < 41 rows are not applicable.
pub fn check_log_sum_sandwich(
    table: &PrimeTable,
    xs: &[f64],
    lams: &[f64],
) -> Result<Vec<MarginReport>> {
    let mut out = Vec::new();
    for &x in xs {
        for &lam in lams {
            let sum = table.prime_log_sum(x, lam)?;
            let scale = x.powf(1.0 - lam);
            let lower = scale * (1.0 - 1.0 / x.ln());
            let upper = THETA_UPPER_CONST / (1.0 - lam) * scale;
            let claimed = x >= THETA_LOWER_FROM;
            out.push(
                MarginReport::less_eq("log_sum_lower", lower, sum)
                    .with_x(x)
                    .term("lam", lam)
                    .term("log_sum", sum)
                    .claim("x^(1-lam) (1 - 1/log x) <= sum_{p<=x} log p / p^lam, 0 < lam < 1, x >= 41")
                    .not_applicable_unless(claimed),
            );
            out.push(
                MarginReport::less_eq("log_sum_upper", sum, upper)
                    .with_x(x)
                    .term("lam", lam)
                    .term("log_sum", sum)
                    .claim("sum_{p<=x} log p / p^lam <= 1.01624/(1-lam) x^(1-lam), 0 < lam < 1, x >= 41")
                    .not_applicable_unless(claimed),
            );
        }
    }
    Ok(out)
}
