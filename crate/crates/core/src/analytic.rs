//! Riemann and prime zeta functions at real arguments, the equation that
//! fixes the critical exponent for primitive sets, and the constants the
//! harness compares against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::quad::adaptive_simpson;

/// Closest approach to the pole at s = 1 that the zeta routines accept.
pub const POLE_GUARD: f64 = 1e-6;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bracket on which the critical-exponent equation is solved.
pub const TAU1_BRACKET: (f64, f64) = (1.05, 1.30);

/// Default prime cutoff for the direct part of the Erdős sum.
pub const ERDOS_DEFAULT_CUTOFF: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Precision {
    /// Relative truncation tolerance for series.
    pub rel_tol: f64,
    /// Cap on the number of Möbius-series terms.
    pub max_terms: usize,
    /// Required |g(tau)| at the returned root.
    pub bisect_tol: f64,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            rel_tol: 1e-10,
            max_terms: 1000,
            bisect_tol: 1e-8,
        }
    }
}

impl Precision {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1e-4) {
            return Err(Error::Domain(format!("rel_tol must lie in (0, 1e-4), got {}", self.rel_tol)));
        }
        if self.max_terms == 0 {
            return Err(Error::Domain("max_terms must be positive".into()));
        }
        if !(self.bisect_tol > 0.0) {
            return Err(Error::Domain(format!("bisect_tol must be positive, got {}", self.bisect_tol)));
        }
        Ok(())
    }
}

// B_2, B_4, ..., B_20 divided by (2j)!
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
];

fn check_pole(s: f64) -> Result<()> {
    if s.is_nan() || s <= 1.0 + POLE_GUARD {
        return Err(Error::PoleProximity(s));
    }
    Ok(())
}

/// `zeta(s) - 1` by Euler–Maclaurin: direct sum below N, then the integral,
/// half-term and ten Bernoulli corrections. Keeping the leading 1 out
/// preserves relative accuracy for large s.
pub fn zeta_minus_one(s: f64) -> Result<f64> {
    check_pole(s)?;
    // N >= s keeps the Bernoulli corrections decreasing
    let n_cut = 32.0f64.max(s.ceil());
    let n_int = n_cut as u64;
    let mut sum = 0.0;
    for n in 2..n_int {
        sum += (n as f64).powf(-s);
    }
    let n_pow = n_cut.powf(-s);
    sum += n_cut * n_pow / (s - 1.0);
    sum += 0.5 * n_pow;
    // coefficient s (s+1) ... (s+2j-2) N^(-s-2j+1)
    let mut rising = s * n_pow / n_cut;
    for (j, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += c * rising;
        let a = s + 2.0 * j as f64 + 1.0;
        rising *= a * (a + 1.0) / (n_cut * n_cut);
    }
    Ok(sum)
}

/// Riemann zeta at real `s > 1`.
pub fn zeta(s: f64, prec: &Precision) -> Result<f64> {
    prec.validate()?;
    Ok(1.0 + zeta_minus_one(s)?)
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i32 {
    if n == 1 {
        return 1;
    }
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Prime zeta `P(s) = sum_p p^(-s) = sum_n mu(n)/n log zeta(ns)`.
pub fn prime_zeta(s: f64, prec: &Precision) -> Result<f64> {
    prec.validate()?;
    check_pole(s)?;
    let mut partial = 0.0;
    for n in 1..=prec.max_terms as u64 {
        let mu = mobius(n);
        if mu == 0 {
            continue;
        }
        let term = mu as f64 / n as f64 * zeta_minus_one(n as f64 * s)?.ln_1p();
        partial += term;
        if n > 1 && term.abs() < prec.rel_tol * partial.abs() {
            break;
        }
    }
    Ok(partial)
}

/// The defining function of the critical exponent for primitive sets:
/// `g(t) = P(t) - 1 - sqrt(1 - P(2t))`.
pub fn tau1_equation(tau: f64, prec: &Precision) -> Result<f64> {
    let p1 = prime_zeta(tau, prec)?;
    let p2 = prime_zeta(2.0 * tau, prec)?;
    if p2 > 1.0 {
        return Err(Error::Domain(format!("P(2 tau) = {p2} > 1 at tau = {tau}")));
    }
    Ok(p1 - 1.0 - (1.0 - p2).sqrt())
}

/// Solves `g(tau) = 0` by bisection on [1.05, 1.30].
pub fn solve_tau1(prec: &Precision) -> Result<f64> {
    let (mut lo, mut hi) = TAU1_BRACKET;
    let g_lo = tau1_equation(lo, prec)?;
    let g_hi = tau1_equation(hi, prec)?;
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::Bracket { lo, hi, g_lo, g_hi });
    }
    let lo_sign = g_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = tau1_equation(mid, prec)?;
        if g == 0.0 {
            return Ok(mid);
        }
        if g.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    let tau = 0.5 * (lo + hi);
    let g = tau1_equation(tau, prec)?;
    if g.abs() > prec.bisect_tol {
        return Err(Error::Internal(format!("|g(tau)| = {g:e} above bisect_tol at tau = {tau}")));
    }
    Ok(tau)
}

/// `sum_p 1/(p log p)` with the direct part over the primes of the default
/// cutoff (10^5).
pub fn erdos_constant(prec: &Precision) -> Result<f64> {
    let table = PrimeTable::sieve(ERDOS_DEFAULT_CUTOFF)?;
    erdos_constant_with_cutoff(&table, ERDOS_DEFAULT_CUTOFF as f64, prec)
}

/// Direct sum over `p <= cutoff` plus the tail
/// `sum_{p > X} 1/(p log p) = int_1^inf (P(s) - sum_{p<=X} p^(-s)) ds`.
///
/// The integral is taken in `t = log(s - 1)`. Below `s = 1 + u0` the
/// integrand behaves like `R(1+u0) + log(u0/u)`, which integrates exactly.
pub fn erdos_constant_with_cutoff(table: &PrimeTable, cutoff: f64, prec: &Precision) -> Result<f64> {
    prec.validate()?;
    let primes = table.primes_up_to(cutoff)?;
    let direct: f64 = primes.iter().map(|&p| 1.0 / (p as f64 * (p as f64).ln())).sum();
    let remainder = |s: f64| -> Result<f64> {
        let partial: f64 = primes.iter().map(|&p| (p as f64).powf(-s)).sum();
        Ok(prime_zeta(s, prec)? - partial)
    };
    let u0 = 2.0 * POLE_GUARD;
    let near_pole = u0 * (remainder(1.0 + u0)? + 1.0);
    let mut failure = None;
    let body = adaptive_simpson(
        |t| {
            let u = t.exp();
            match remainder(1.0 + u) {
                Ok(r) => r * u,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        u0.ln(),
        64f64.ln(),
        1e-9,
        40,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(direct + near_pole + body)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NamedConstants {
    pub euler_gamma: f64,
    pub e_gamma: f64,
    pub tau1_reported: f64,
    pub erdos_reported: f64,
    pub clp_lambda: f64,
    pub tau2_interval: [f64; 2],
}

pub fn named_constants() -> NamedConstants {
    NamedConstants {
        euler_gamma: EULER_GAMMA,
        e_gamma: EULER_GAMMA.exp(),
        tau1_reported: 1.1403,
        erdos_reported: 1.6366,
        clp_lambda: 0.7983,
        tau2_interval: [0.5, 0.7983],
    }
}
