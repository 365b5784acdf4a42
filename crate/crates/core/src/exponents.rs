//! Exponent schedules for the three primitivity notions.
//!
//! * `main` (k-primitive): 1.2, 0.8, then `2.625 prod_{i<=k} (1 - 1/p_i)`.
//! * `lcm`: 8/7, then `3 prod_{i<=k} (1 - 1/p_i)`.
//! * `strong`: `3 log k / k`.
//!
//! Each schedule carries the step ratio `theta(k) = 1 - lambda(k)/lambda(k-1)`
//! (with the two fixed seeds `theta_3 = 1/8` for main and `theta_2 = 1/8`
//! for lcm) and `nu(k) = 1/theta(k)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::report::MarginReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Main,
    Lcm,
    Strong,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Main, Variant::Lcm, Variant::Strong];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Main => "main",
            Variant::Lcm => "lcm",
            Variant::Strong => "strong",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main" => Ok(Variant::Main),
            "lcm" => Ok(Variant::Lcm),
            "strong" => Ok(Variant::Strong),
            other => Err(Error::Domain(format!("unknown variant {other:?}"))),
        }
    }
}

pub const MAIN_SCALE: f64 = 2.625;
pub const LCM_SCALE: f64 = 3.0;

/// Exponent schedule bound to a prime table.
#[derive(Debug, Clone)]
pub struct ExponentSchedule<'a> {
    variant: Variant,
    table: &'a PrimeTable,
    // mertens[k] = prod_{i<=k} (1 - 1/p_i), left to right
    mertens: Vec<f64>,
}

pub fn schedule(variant: Variant, table: &PrimeTable) -> ExponentSchedule<'_> {
    ExponentSchedule::new(variant, table)
}

impl<'a> ExponentSchedule<'a> {
    pub fn new(variant: Variant, table: &'a PrimeTable) -> Self {
        let mertens = match variant {
            Variant::Strong => Vec::new(),
            _ => {
                let mut m = Vec::with_capacity(table.len() + 1);
                let mut acc = 1.0;
                m.push(acc);
                for &p in table.primes() {
                    acc *= 1.0 - 1.0 / p as f64;
                    m.push(acc);
                }
                m
            }
        };
        ExponentSchedule {
            variant,
            table,
            mertens,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn table(&self) -> &'a PrimeTable {
        self.table
    }

    pub fn prime(&self, k: usize) -> Result<u64> {
        self.table.nth_prime(k)
    }

    /// `prod_{i<=k} (1 - 1/p_i)`.
    pub fn mertens_product(&self, k: usize) -> Result<f64> {
        self.table.nth_prime(k.max(1))?;
        match self.mertens.get(k) {
            Some(&m) => Ok(m),
            None => Ok(mertens_product(self.table, k)),
        }
    }

    pub fn lambda(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("schedules start at k = 1".into()));
        }
        match (self.variant, k) {
            (Variant::Main, 1) => Ok(1.2),
            (Variant::Main, 2) => Ok(0.8),
            (Variant::Main, _) => Ok(MAIN_SCALE * self.mertens_product(k)?),
            (Variant::Lcm, 1) => Ok(8.0 / 7.0),
            (Variant::Lcm, _) => Ok(LCM_SCALE * self.mertens_product(k)?),
            (Variant::Strong, 1) => Err(Error::Domain("the strong schedule starts at k = 2".into())),
            (Variant::Strong, _) => {
                let kf = k as f64;
                Ok(3.0 * kf.ln() / kf)
            }
        }
    }

    pub fn theta(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("schedules start at k = 1".into()));
        }
        match (self.variant, k) {
            (Variant::Main, 3) | (Variant::Lcm, 2) => Ok(1.0 / 8.0),
            (Variant::Main, _) | (Variant::Lcm, _) => Ok(1.0 / self.prime(k)? as f64),
            (Variant::Strong, k) if k < 3 => Err(Error::Domain(format!(
                "strong theta needs lambda(k-1), undefined for k = {k}"
            ))),
            (Variant::Strong, _) => Ok(1.0 - self.lambda(k)? / self.lambda(k - 1)?),
        }
    }

    pub fn nu(&self, k: usize) -> Result<f64> {
        match (self.variant, k) {
            (Variant::Main, 3) | (Variant::Lcm, 2) => Ok(8.0),
            (Variant::Main, _) | (Variant::Lcm, _) if k >= 1 => Ok(self.prime(k)? as f64),
            _ => Ok(1.0 / self.theta(k)?),
        }
    }

    /// `nu(k)` as an index for the main and lcm schedules, where it is an integer.
    pub fn nu_index(&self, k: usize) -> Result<usize> {
        match self.variant {
            Variant::Strong => Err(Error::Domain("nu is not an integer for the strong schedule".into())),
            _ => Ok(self.nu(k)? as usize),
        }
    }
}

/// `prod_{i<=k} (1 - 1/p_i)` accumulated left to right.
pub fn mertens_product(table: &PrimeTable, k: usize) -> f64 {
    table.primes()[..k.min(table.len())]
        .iter()
        .fold(1.0, |acc, &p| acc * (1.0 - 1.0 / p as f64))
}

/// Prime cutoff below which the bounds are checked by direct computation.
pub const PRIMEINEQ_DIRECT_CUTOFF: u64 = 2000;
pub const LAMBDA_LOWER_FROM: usize = 62;
pub const MU_LOWER_FROM: usize = 47;

// rounded values of gamma used in the closed-form route: rounding up for the
// lower bound and down for the upper bound keeps both conservative
const GAMMA_UP: f64 = 0.57722;
const GAMMA_DOWN: f64 = 0.57721;

/// The four bounds `1.45/log p_k < lambda_k < 1.5/log p_k` (lower from k = 62)
/// and `1.65/log p_k < mu_k < 1.7/log p_k` (lower from k = 47) for every
/// `k <= k_max`. For `p_k > 2000` the closed-form route through the explicit
/// Mertens bounds
/// `e^-g/log x (1 - 1/(2 log^2 x)) < prod_{p<=x}(1-1/p) < e^-g/log x (1 + 1/(2 log^2 x))`
/// is reported as well.
pub fn verify_lemma_primeineq(table: &PrimeTable, k_max: usize) -> Result<Vec<MarginReport>> {
    table.nth_prime(k_max)?;
    let main = schedule(Variant::Main, table);
    let lcm = schedule(Variant::Lcm, table);
    let mut out = Vec::with_capacity(4 * k_max);
    for k in 1..=k_max {
        let p = table.nth_prime(k)?;
        let log_p = (p as f64).ln();
        let lam = main.lambda(k)?;
        let mu = lcm.lambda(k)?;
        let direct = p <= PRIMEINEQ_DIRECT_CUTOFF;
        let tag = |r: MarginReport| r.with_k(k as u64).term("p_k", p as f64).term("log_p_k", log_p);
        out.push(tag(
            MarginReport::less("lambda_upper", lam, 1.5 / log_p)
                .with_variant(Variant::Main)
                .claim("lambda_k < 1.5/log p_k for k >= 1"),
        ));
        out.push(tag(
            MarginReport::less("lambda_lower", 1.45 / log_p, lam)
                .with_variant(Variant::Main)
                .claim("lambda_k > 1.45/log p_k for k >= 62")
                .not_applicable_unless(k >= LAMBDA_LOWER_FROM),
        ));
        out.push(tag(
            MarginReport::less("mu_upper", mu, 1.7 / log_p)
                .with_variant(Variant::Lcm)
                .claim("mu_k < 1.7/log p_k for k >= 1"),
        ));
        out.push(tag(
            MarginReport::less("mu_lower", 1.65 / log_p, mu)
                .with_variant(Variant::Lcm)
                .claim("mu_k > 1.65/log p_k for k >= 47")
                .not_applicable_unless(k >= MU_LOWER_FROM),
        ));
        if direct {
            continue;
        }
        let m = main.mertens_product(k)?;
        let corr = 1.0 / (2.0 * log_p * log_p);
        let mertens_lo = (-crate::analytic::EULER_GAMMA).exp() / log_p * (1.0 - corr);
        let mertens_hi = (-crate::analytic::EULER_GAMMA).exp() / log_p * (1.0 + corr);
        out.push(tag(
            MarginReport::less("mertens_closed_form_lower", mertens_lo, m)
                .claim("e^-gamma/log x (1 - 1/(2 log^2 x)) < prod_{p<=x} (1 - 1/p)"),
        ));
        out.push(tag(
            MarginReport::less("mertens_closed_form_upper", m, mertens_hi)
                .claim("prod_{p<=x} (1 - 1/p) < e^-gamma/log x (1 + 1/(2 log^2 x))"),
        ));
        for (variant, scale, lo_c, hi_c, name) in [
            (Variant::Main, MAIN_SCALE, 1.45, 1.5, "lambda"),
            (Variant::Lcm, LCM_SCALE, 1.65, 1.7, "mu"),
        ] {
            let closed_lo = scale * (-GAMMA_UP).exp() / log_p * (1.0 - corr);
            let closed_hi = scale * (-GAMMA_DOWN).exp() / log_p * (1.0 + corr);
            out.push(tag(
                MarginReport::less(&format!("{name}_lower_closed_form"), lo_c / log_p, closed_lo)
                    .with_variant(variant)
                    .term("scale", scale)
                    .claim("c e^-0.57722/log p_k (1 - 1/(2 log^2 p_k)) exceeds the lower constant / log p_k"),
            ));
            out.push(tag(
                MarginReport::less(&format!("{name}_upper_closed_form"), closed_hi, hi_c / log_p)
                    .with_variant(variant)
                    .term("scale", scale)
                    .claim("c e^-0.57721/log p_k (1 + 1/(2 log^2 p_k)) is below the upper constant / log p_k"),
            ));
        }
    }
    Ok(out)
}

/// `lambda_main(k) <= 3 log k / k` for `2 <= k <= 38`: the range where the
/// strong schedule is covered by the main one.
pub fn verify_strong_base(table: &PrimeTable) -> Result<Vec<MarginReport>> {
    let main = schedule(Variant::Main, table);
    let strong = schedule(Variant::Strong, table);
    (2..=38)
        .map(|k| {
            Ok(MarginReport::less_eq("strong_base", main.lambda(k)?, strong.lambda(k)?)
                .with_k(k as u64)
                .with_variant(Variant::Strong)
                .claim("lambda_main(k) <= 3 log k / k for 2 <= k <= 38"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::sieve(200_000).unwrap()
    }

    #[test]
    fn main_seeds_and_first_product() {
        let t = table();
        let s = schedule(Variant::Main, &t);
        assert_eq!(s.lambda(1).unwrap(), 1.2);
        assert_eq!(s.lambda(2).unwrap(), 0.8);
        let l3 = 2.625 * 0.5 * (2.0 / 3.0) * 0.8;
        assert!((s.lambda(3).unwrap() - l3).abs() < 1e-15);
        assert!((l3 - 0.7).abs() < 1e-15);
        assert_eq!(s.theta(3).unwrap(), 0.125);
        assert_eq!(s.nu(3).unwrap(), 8.0);
        assert_eq!(s.theta(4).unwrap(), 1.0 / 7.0);
        assert_eq!(s.nu_index(10).unwrap(), 29);
    }

    #[test]
    fn lcm_seeds() {
        let t = table();
        let s = schedule(Variant::Lcm, &t);
        assert_eq!(s.lambda(1).unwrap(), 8.0 / 7.0);
        assert!((s.lambda(2).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(s.theta(2).unwrap(), 0.125);
        assert_eq!(s.theta(3).unwrap(), 0.2);
        assert_eq!(s.nu(2).unwrap(), 8.0);
    }

    #[test]
    fn strong_values() {
        let t = table();
        let s = schedule(Variant::Strong, &t);
        assert!(s.lambda(1).is_err());
        assert!(s.theta(2).is_err());
        assert!((s.lambda(39).unwrap() - 3.0 * 39f64.ln() / 39.0).abs() < 1e-15);
        let th = 1.0 - s.lambda(39).unwrap() / s.lambda(38).unwrap();
        assert_eq!(s.theta(39).unwrap(), th);
        assert!(s.nu_index(39).is_err());
    }

    #[test]
    fn products_satisfy_the_theta_recurrence() {
        let t = table();
        for (variant, from) in [(Variant::Main, 4), (Variant::Lcm, 3), (Variant::Strong, 3)] {
            let s = schedule(variant, &t);
            for k in from..400 {
                let ratio = s.lambda(k).unwrap() / s.lambda(k - 1).unwrap();
                assert!((ratio - (1.0 - s.theta(k).unwrap())).abs() < 1e-13, "{variant} k={k}");
            }
        }
    }

    #[test]
    fn closed_product_identities() {
        let t = table();
        let main = schedule(Variant::Main, &t);
        let lcm = schedule(Variant::Lcm, &t);
        let mut main_prod = 2.4;
        let mut lcm_prod = 16.0 / 7.0;
        for k in 1..300 {
            main_prod *= 1.0 - main.theta(k).unwrap();
            lcm_prod *= 1.0 - lcm.theta(k).unwrap();
            assert!((main.lambda(k).unwrap() - main_prod).abs() < 1e-13, "main k={k}");
            assert!((lcm.lambda(k).unwrap() - lcm_prod).abs() < 1e-13, "lcm k={k}");
            if k >= 3 {
                let scaled = 2.625 / 3.0 * lcm.lambda(k).unwrap();
                assert!((main.lambda(k).unwrap() - scaled).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn schedules_strictly_decrease() {
        let t = table();
        for (variant, from) in [(Variant::Main, 2), (Variant::Lcm, 1), (Variant::Strong, 3)] {
            let s = schedule(variant, &t);
            for k in from..2000 {
                assert!(s.lambda(k + 1).unwrap() < s.lambda(k).unwrap(), "{variant} k={k}");
            }
        }
    }

    #[test]
    fn strong_nu_exceeds_k() {
        let t = table();
        let s = schedule(Variant::Strong, &t);
        for k in 39..5000 {
            assert!(s.nu(k).unwrap() > k as f64, "k={k}");
        }
    }

    #[test]
    fn range_errors() {
        let t = PrimeTable::sieve(100).unwrap();
        let s = schedule(Variant::Main, &t);
        assert!(matches!(s.lambda(26), Err(Error::OutOfRange { .. })));
        assert!(s.lambda(25).is_ok());
        assert!(matches!(verify_lemma_primeineq(&t, 30), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn lemma_bounds_sample_rows() {
        let t = table();
        let reps = verify_lemma_primeineq(&t, 62).unwrap();
        let find = |k: u64, name: &str| reps.iter().find(|r| r.k == Some(k) && r.check == name).unwrap().clone();
        let r = find(1, "lambda_upper");
        assert!(r.passed());
        assert!((r.rhs - 1.5 / 2f64.ln()).abs() < 1e-15);
        assert!((r.rhs - 2.164).abs() < 1e-3);
        assert!(find(62, "lambda_lower").passed());
        assert_eq!(find(61, "lambda_lower").status, crate::report::Status::NotApplicable);
        assert_eq!(find(46, "mu_lower").status, crate::report::Status::NotApplicable);
        assert!(find(47, "mu_lower").passed());
    }

    #[test]
    fn closed_form_rows_appear_past_cutoff() {
        let t = table();
        let k = 400; // p_400 = 2741
        let reps = verify_lemma_primeineq(&t, k).unwrap();
        let last: Vec<_> = reps.iter().filter(|r| r.k == Some(k as u64)).collect();
        assert_eq!(last.len(), 10);
        assert!(last.iter().all(|r| r.passed()), "{last:?}");
        let early: Vec<_> = reps.iter().filter(|r| r.k == Some(303)).collect();
        assert_eq!(early.len(), 4); // p_303 = 1999
    }

    #[test]
    fn strong_base_margins() {
        let t = table();
        let reps = verify_strong_base(&t).unwrap();
        assert_eq!(reps.len(), 37);
        let k2 = &reps[0];
        assert!(k2.passed());
        assert!((k2.rhs - 3.0 * 2f64.ln() / 2.0).abs() < 1e-15);
        assert!(reps[1].passed());
        // the reduction is tight at the top of its range
        let k38 = reps.last().unwrap();
        assert!(k38.passed());
        assert!(k38.margin > 0.0 && k38.margin < 0.003, "{}", k38.margin);
    }
}
