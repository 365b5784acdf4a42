//! Factored integers, candidate sets and exact predicates for the three
//! primitivity notions.
//!
//! Divisibility of products is decided on exponent vectors: `a` divides
//! `m_1 ... m_j` iff `v_p(a) <= sum_i v_p(m_i)` for every prime `p | a`,
//! and `a` divides `lcm(m_1, ..., m_j)` iff every `p^v_p(a)` divides some
//! `m_i`. Only members sharing a prime with `a` can contribute, so each
//! check runs over the (usually short) list of such helpers.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::Variant;
use crate::report::MarginReport;

/// Largest integer accepted by [`factor`].
pub const FACTOR_LIMIT: u64 = 1_000_000_000_000;

/// Default cap on |A| for the exact predicates.
pub const DEFAULT_SET_CAP: usize = 64;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        crate::primes::PrimeTable::sieve(1_000_000)
            .expect("fixed sieve bound")
            .primes()
            .to_vec()
    })
}

/// An integer > 1 with its prime factorization in increasing prime order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInt {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl PartialOrd for FactoredInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FactoredInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n.cmp(&other.n)
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

/// Complete factorization by trial division over the cached primes up to 10^6.
pub fn factor(n: u64) -> Result<FactoredInt> {
    if n <= 1 {
        return Err(Error::Domain(format!("factor needs n > 1, got {n}")));
    }
    if n > FACTOR_LIMIT {
        return Err(Error::Resource {
            what: "factor input",
            requested: n,
            cap: FACTOR_LIMIT,
        });
    }
    let mut rest = n;
    let mut factors = Vec::new();
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredInt { n, factors })
}

impl FactoredInt {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `P(n)`, the largest prime factor.
    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map(|&(p, _)| p).unwrap_or(1)
    }

    /// `Q(n)`, the largest prime-power factor `p^v_p(n)`.
    pub fn largest_prime_power(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).max().unwrap_or(1)
    }

    /// `Omega(n)`, the number of prime factors with multiplicity.
    pub fn omega_total(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// A prime power `p^e` with `e >= 2`.
    pub fn is_proper_prime_power(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 >= 2
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn shares_prime_with(&self, other: &FactoredInt) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn divides(&self, m: u64) -> bool {
        m % self.n == 0
    }
}

/// A finite set of integers > 1 with cached factorizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    members: Vec<FactoredInt>,
    support: BTreeSet<u64>,
}

impl CandidateSet {
    /// Builds the set; duplicates collapse.
    pub fn new<I: IntoIterator<Item = u64>>(values: I) -> Result<Self> {
        let values: BTreeSet<u64> = values.into_iter().collect();
        let members = values.into_iter().map(factor).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_factored(members))
    }

    pub fn from_factored(mut members: Vec<FactoredInt>) -> Self {
        members.sort();
        members.dedup();
        let support = members.iter().flat_map(|m| m.primes()).collect();
        CandidateSet { members, support }
    }

    pub fn members(&self) -> &[FactoredInt] {
        &self.members
    }

    pub fn values(&self) -> Vec<u64> {
        self.members.iter().map(|m| m.n).collect()
    }

    /// `P(A)`: primes dividing some member.
    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.members.binary_search_by_key(&n, |m| m.n).is_ok()
    }

    /// `T_p`: members divisible by `p`.
    pub fn multiples_of(&self, p: u64) -> Vec<u64> {
        self.members.iter().filter(|m| m.n % p == 0).map(|m| m.n).collect()
    }

    /// `sum_{n in A} n^(-lam)`.
    pub fn weighted_sum(&self, lam: f64) -> f64 {
        self.members.iter().map(|m| (m.n as f64).powf(-lam)).sum()
    }
}

/// `divisor` divides the product (or lcm) of `factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub divisor: u64,
    pub factors: Vec<u64>,
}

impl Witness {
    /// Re-checks the witness by direct arithmetic.
    pub fn is_valid(&self, notion: Variant) -> bool {
        if self.factors.is_empty() || self.factors.contains(&self.divisor) {
            return false;
        }
        match notion {
            Variant::Lcm => {
                let a = self.divisor as u128;
                // reduce lcm modulo nothing: gcd(a, m) captures what m contributes
                let mut acc: u128 = 1;
                for &m in &self.factors {
                    let g = gcd(a, m as u128);
                    acc = acc / gcd(acc, g) * g;
                }
                acc % a == 0
            }
            _ => {
                let a = self.divisor as u128;
                let mut acc: u128 = 1;
                for &m in &self.factors {
                    acc = (acc * (m as u128 % a)) % a;
                }
                acc % a == 0
            }
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub primitive: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitivityOptions {
    /// Largest |A| for the exact check.
    pub cap: usize,
    /// Forbid only products of exactly k members (the single-j definition)
    /// instead of every 1 <= j <= k.
    pub single_j: bool,
}

impl Default for PrimitivityOptions {
    fn default() -> Self {
        PrimitivityOptions {
            cap: DEFAULT_SET_CAP,
            single_j: false,
        }
    }
}

/// No member divides a product of `j` distinct other members, `1 <= j <= k`.
pub fn is_k_primitive(set: &CandidateSet, k: usize) -> Result<Outcome> {
    check_primitive(set, k, Variant::Main, &PrimitivityOptions::default())
}

/// No member divides a product of at most `k` other members, repetition allowed.
pub fn is_strongly_k_primitive(set: &CandidateSet, k: usize) -> Result<Outcome> {
    check_primitive(set, k, Variant::Strong, &PrimitivityOptions::default())
}

/// No member divides the lcm of at most `k` distinct other members.
pub fn is_lcm_k_primitive(set: &CandidateSet, k: usize) -> Result<Outcome> {
    check_primitive(set, k, Variant::Lcm, &PrimitivityOptions::default())
}

/// Exact check for any notion. Members are tried as divisors in increasing
/// order, so the first witness found is reproducible.
pub fn check_primitive(
    set: &CandidateSet,
    k: usize,
    notion: Variant,
    opts: &PrimitivityOptions,
) -> Result<Outcome> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    if set.len() > opts.cap {
        return Err(Error::SizeCap {
            size: set.len(),
            cap: opts.cap,
        });
    }
    for (i, a) in set.members.iter().enumerate() {
        let others: Vec<&FactoredInt> = set
            .members
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, m)| m)
            .collect();
        if let Some(w) = witness_against(a, &others, k, notion, opts.single_j) {
            return Ok(Outcome {
                primitive: false,
                witness: Some(w),
            });
        }
    }
    Ok(Outcome {
        primitive: true,
        witness: None,
    })
}

/// Looks for a violation that involves `new` when it is added to `set`,
/// either as the divisor or as one of the factors. `set` is assumed free
/// of violations already.
pub fn violation_with(set: &[FactoredInt], new: &FactoredInt, k: usize, notion: Variant) -> Option<Witness> {
    let others: Vec<&FactoredInt> = set.iter().collect();
    if let Some(w) = witness_against(new, &others, k, notion, false) {
        return Some(w);
    }
    for (i, a) in set.iter().enumerate() {
        if !a.shares_prime_with(new) {
            continue;
        }
        let mut others: Vec<&FactoredInt> = Vec::with_capacity(set.len());
        for (j, m) in set.iter().enumerate() {
            if j != i {
                others.push(m);
            }
        }
        others.push(new);
        others.sort();
        if let Some(w) = witness_against(a, &others, k, notion, false) {
            return Some(w);
        }
    }
    None
}

/// Searches for members of `others` (sorted ascending) whose product, or
/// lcm, `a` divides.
pub(crate) fn witness_against(
    a: &FactoredInt,
    others: &[&FactoredInt],
    k: usize,
    notion: Variant,
    single_j: bool,
) -> Option<Witness> {
    if single_j {
        let enough = match notion {
            Variant::Strong => !others.is_empty(),
            _ => others.len() >= k,
        };
        if !enough {
            return None;
        }
    }
    let demand: Vec<u32> = a.factors.iter().map(|&(_, e)| e).collect();
    let helpers: Vec<(&FactoredInt, Vec<u32>)> = others
        .iter()
        .filter_map(|m| {
            let c: Vec<u32> = a
                .factors
                .iter()
                .zip(&demand)
                .map(|(&(p, _), &d)| m.valuation(p).min(d))
                .collect();
            c.iter().any(|&x| x > 0).then_some((*m, c))
        })
        .collect();
    if helpers.is_empty() {
        return None;
    }
    let chosen = match notion {
        Variant::Main => product_search(&demand, &helpers, k, false),
        Variant::Strong => product_search(&demand, &helpers, k, true),
        Variant::Lcm => lcm_search(&demand, &helpers, k),
    }?;
    let mut factors: Vec<u64> = chosen.into_iter().map(|i| helpers[i].0.n).collect();
    if single_j && notion != Variant::Strong {
        // pad with unused members so exactly k factors appear
        for m in others {
            if factors.len() >= k {
                break;
            }
            if !factors.contains(&m.n) {
                factors.push(m.n);
            }
        }
        factors.sort_unstable();
    }
    Some(Witness {
        divisor: a.n,
        factors,
    })
}

fn product_search(
    demand: &[u32],
    helpers: &[(&FactoredInt, Vec<u32>)],
    k: usize,
    repeat: bool,
) -> Option<Vec<usize>> {
    let dims = demand.len();
    // suffix_max[i][d] = max contribution to prime d among helpers[i..]
    let mut suffix_max = vec![vec![0u32; dims]; helpers.len() + 1];
    for i in (0..helpers.len()).rev() {
        for d in 0..dims {
            suffix_max[i][d] = suffix_max[i + 1][d].max(helpers[i].1[d]);
        }
    }
    struct Ctx<'h, 'a> {
        helpers: &'h [(&'a FactoredInt, Vec<u32>)],
        suffix_max: Vec<Vec<u32>>,
        repeat: bool,
        failed: HashSet<(usize, usize, Vec<u32>)>,
        path: Vec<usize>,
    }
    fn go(ctx: &mut Ctx<'_, '_>, start: usize, slots: usize, residual: &[u32]) -> bool {
        if residual.iter().all(|&r| r == 0) {
            return true;
        }
        if slots == 0 || start >= ctx.helpers.len() {
            return false;
        }
        let reachable = residual
            .iter()
            .zip(&ctx.suffix_max[start])
            .all(|(&r, &m)| (m as usize) * slots >= r as usize);
        if !reachable {
            return false;
        }
        let key = (start, slots, residual.to_vec());
        if ctx.repeat && ctx.failed.contains(&key) {
            return false;
        }
        for i in start..ctx.helpers.len() {
            let c = &ctx.helpers[i].1;
            if !residual.iter().zip(c).any(|(&r, &x)| r > 0 && x > 0) {
                continue;
            }
            let next: Vec<u32> = residual.iter().zip(c).map(|(&r, &x)| r.saturating_sub(x)).collect();
            ctx.path.push(i);
            let from = if ctx.repeat { i } else { i + 1 };
            if go(ctx, from, slots - 1, &next) {
                return true;
            }
            ctx.path.pop();
        }
        if ctx.repeat {
            ctx.failed.insert(key);
        }
        false
    }
    let mut ctx = Ctx {
        helpers,
        suffix_max,
        repeat,
        failed: HashSet::new(),
        path: Vec::new(),
    };
    go(&mut ctx, 0, k, demand).then_some(ctx.path)
}

fn lcm_search(demand: &[u32], helpers: &[(&FactoredInt, Vec<u32>)], k: usize) -> Option<Vec<usize>> {
    let full: u64 = (1u64 << demand.len()) - 1;
    let covers: Vec<u64> = helpers
        .iter()
        .map(|(_, c)| {
            c.iter()
                .zip(demand)
                .enumerate()
                .filter(|(_, (&x, &d))| x >= d)
                .fold(0u64, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    // every prime must be coverable by someone
    if covers.iter().fold(0, |acc, c| acc | c) != full {
        return None;
    }
    fn go(covers: &[u64], uncovered: u64, slots: usize, failed: &mut HashSet<(u64, usize)>, path: &mut Vec<usize>) -> bool {
        if uncovered == 0 {
            return true;
        }
        if slots == 0 || failed.contains(&(uncovered, slots)) {
            return false;
        }
        let lowest = uncovered & uncovered.wrapping_neg();
        for (i, &c) in covers.iter().enumerate() {
            if c & lowest == 0 {
                continue;
            }
            path.push(i);
            if go(covers, uncovered & !c, slots - 1, failed, path) {
                return true;
            }
            path.pop();
        }
        failed.insert((uncovered, slots));
        false
    }
    let mut path = Vec::new();
    let mut failed = HashSet::new();
    if go(&covers, full, k, &mut failed, &mut path) {
        path.sort_unstable();
        Some(path)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "witness")]
pub enum RandomVerdict {
    Refuted(Witness),
    Unknown,
}

/// Refutation-only check for sets above the exact cap: samples a divisor and
/// a random group of at most `k` helpers per trial.
pub fn refute_randomized(set: &CandidateSet, k: usize, notion: Variant, trials: usize, seed: u64) -> Result<RandomVerdict> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    if set.len() < 2 {
        return Ok(RandomVerdict::Unknown);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a = &set.members[rng.gen_range(0..set.len())];
        let helpers: Vec<&FactoredInt> = set
            .members
            .iter()
            .filter(|m| m.n != a.n && m.shares_prime_with(a))
            .collect();
        if helpers.is_empty() {
            continue;
        }
        let size = rng.gen_range(1..=k);
        let factors: Vec<u64> = match notion {
            Variant::Strong => (0..size).map(|_| helpers[rng.gen_range(0..helpers.len())].n).collect(),
            _ => helpers
                .choose_multiple(&mut rng, size.min(helpers.len()))
                .map(|m| m.n)
                .collect(),
        };
        let mut factors = factors;
        factors.sort_unstable();
        let w = Witness {
            divisor: a.n,
            factors,
        };
        if w.is_valid(notion) {
            return Ok(RandomVerdict::Refuted(w));
        }
    }
    Ok(RandomVerdict::Unknown)
}

/// Outcome of the small-support cardinality and weighted-sum checks on an
/// lcm k-primitive set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YSmallReport {
    pub k: usize,
    pub set: Vec<u64>,
    pub support: Vec<u64>,
    /// `None` when the set was too large to re-check.
    pub lcm_primitive: Option<bool>,
    pub precondition_witness: Option<Witness>,
    pub cardinality: Option<MarginReport>,
    pub sums: Vec<MarginReport>,
    /// The injective map n -> p with `v_p(n) > v_p(m)` for all other members.
    pub assignment: Vec<(u64, u64)>,
}

impl YSmallReport {
    /// Precondition held and no evaluated check failed.
    pub fn passed(&self) -> bool {
        self.lcm_primitive != Some(false)
            && self.cardinality.as_ref().is_none_or(|r| !r.failed())
            && self.sums.iter().all(|r| !r.failed())
    }
}

pub const YSMALL_DEFAULT_LAMBDAS: [f64; 3] = [0.0, 0.5, 1.0];

/// Cardinality bounds for lcm k-primitive sets with few primes:
/// `|A| <= |P(A)|` when `|P(A)| <= k`, and `|A| <= |P(A)| + 1` when
/// `k < |P(A)| < 2k`. In the first case also checks
/// `sum_A n^-lam <= sum_{P(A)} p^-lam` on `lams` and records the prime
/// assignment behind it.
pub fn check_ysmall(set: &CandidateSet, k: usize, lams: &[f64]) -> Result<YSmallReport> {
    if k < 2 {
        return Err(Error::Domain("the small-support bounds need k >= 2".into()));
    }
    let mut report = YSmallReport {
        k,
        set: set.values(),
        support: set.support.iter().copied().collect(),
        lcm_primitive: None,
        precondition_witness: None,
        cardinality: None,
        sums: Vec::new(),
        assignment: Vec::new(),
    };
    if set.len() <= DEFAULT_SET_CAP {
        let outcome = is_lcm_k_primitive(set, k)?;
        report.lcm_primitive = Some(outcome.primitive);
        if !outcome.primitive {
            report.precondition_witness = outcome.witness;
            return Ok(report);
        }
    }
    let size = set.len() as f64;
    let support = set.support.len();
    let support_f = support as f64;
    if support <= k {
        report.cardinality = Some(
            MarginReport::less_eq("ysmall_cardinality", size, support_f)
                .with_k(k as u64)
                .claim("|A| <= |P(A)| when |P(A)| <= k"),
        );
        for &lam in lams {
            let lhs = set.weighted_sum(lam);
            let rhs: f64 = set.support.iter().map(|&p| (p as f64).powf(-lam)).sum();
            report.sums.push(
                MarginReport::less_eq("ysmall_weighted_sum", lhs, rhs)
                    .with_k(k as u64)
                    .term("lam", lam)
                    .claim("sum_{n in A} n^-lam <= sum_{p in P(A)} p^-lam when |P(A)| <= k"),
            );
        }
        report.assignment = dominant_prime_assignment(set);
    } else if support < 2 * k {
        report.cardinality = Some(
            MarginReport::less_eq("ysmall_cardinality", size, support_f + 1.0)
                .with_k(k as u64)
                .claim("|A| <= |P(A)| + 1 when k < |P(A)| < 2k"),
        );
    }
    Ok(report)
}

/// For each member, the smallest prime on which it strictly dominates every
/// other member's valuation. Members without one are left out.
fn dominant_prime_assignment(set: &CandidateSet) -> Vec<(u64, u64)> {
    set.members
        .iter()
        .filter_map(|n| {
            n.factors
                .iter()
                .find(|&&(p, e)| set.members.iter().all(|m| m.n == n.n || m.valuation(p) < e))
                .map(|&(p, _)| (n.n, p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> CandidateSet {
        CandidateSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn factor_examples() {
        let f = factor(60).unwrap();
        assert_eq!(f.factors(), &[(2, 2), (3, 1), (5, 1)]);
        assert_eq!((f.largest_prime(), f.largest_prime_power(), f.omega_total()), (5, 5, 4));
        let f = factor(2520).unwrap();
        assert_eq!(f.factors(), &[(2, 3), (3, 2), (5, 1), (7, 1)]);
        assert_eq!((f.largest_prime(), f.largest_prime_power(), f.omega_total()), (7, 9, 7));
        let f = factor(97).unwrap();
        assert_eq!(f.factors(), &[(97, 1)]);
        assert!(f.is_prime());
        assert_eq!((f.largest_prime(), f.largest_prime_power(), f.omega_total()), (97, 97, 1));
    }

    #[test]
    fn factor_large_and_invalid() {
        let f = factor(999_999_000_001).unwrap();
        assert_eq!(f.factors().iter().map(|&(p, e)| p.pow(e)).product::<u64>(), 999_999_000_001);
        let f = factor(1_000_000_000_000).unwrap();
        assert_eq!(f.factors(), &[(2, 12), (5, 12)]);
        let big_prime = 999_999_999_989;
        assert!(factor(big_prime).unwrap().is_prime());
        assert!(matches!(factor(1), Err(Error::Domain(_))));
        assert!(matches!(factor(0), Err(Error::Domain(_))));
        assert!(matches!(factor(FACTOR_LIMIT + 1), Err(Error::Resource { .. })));
    }

    #[test]
    fn candidate_set_basics() {
        let s = set(&[10, 4, 6, 4]);
        assert_eq!(s.values(), vec![4, 6, 10]);
        assert_eq!(s.support().iter().copied().collect::<Vec<_>>(), vec![2, 3, 5]);
        assert_eq!(s.multiples_of(2), vec![4, 6, 10]);
        assert!(s.contains(6) && !s.contains(5));
        assert!(CandidateSet::new([1, 2]).is_err());
    }

    #[test]
    fn k_primitive_examples() {
        assert!(is_k_primitive(&set(&[4, 5, 6]), 2).unwrap().primitive);
        let out = is_k_primitive(&set(&[4, 6, 10]), 2).unwrap();
        assert!(!out.primitive);
        let w = out.witness.unwrap();
        assert_eq!(w, Witness { divisor: 4, factors: vec![6, 10] });
        assert!(w.is_valid(Variant::Main));
        for k in 1..5 {
            assert!(is_k_primitive(&set(&[2, 3, 5, 7, 11, 13]), k).unwrap().primitive);
            assert!(is_strongly_k_primitive(&set(&[2, 3, 5, 7]), k).unwrap().primitive);
            assert!(is_lcm_k_primitive(&set(&[2, 3, 5, 7]), k).unwrap().primitive);
        }
    }

    #[test]
    fn strong_examples() {
        let out = is_strongly_k_primitive(&set(&[4, 5, 6]), 2).unwrap();
        assert_eq!(out.witness, Some(Witness { divisor: 4, factors: vec![6, 6] }));
        assert!(is_strongly_k_primitive(&set(&[4, 9, 25]), 3).unwrap().primitive);
        assert!(is_strongly_k_primitive(&set(&[8, 6]), 2).unwrap().primitive);
        let out = is_strongly_k_primitive(&set(&[8, 6]), 3).unwrap();
        assert_eq!(out.witness, Some(Witness { divisor: 8, factors: vec![6, 6, 6] }));
    }

    #[test]
    fn lcm_examples() {
        assert!(is_lcm_k_primitive(&set(&[4, 6, 10]), 2).unwrap().primitive);
        let out = is_lcm_k_primitive(&set(&[4, 9, 6]), 2).unwrap();
        assert_eq!(out.witness, Some(Witness { divisor: 6, factors: vec![4, 9] }));
        assert!(is_lcm_k_primitive(&set(&[12, 8]), 2).unwrap().primitive);
    }

    #[test]
    fn single_j_option_differs_only_for_small_sets() {
        let opts = PrimitivityOptions {
            single_j: true,
            ..Default::default()
        };
        // {2, 4}: 2 | 4, but there are not two other members to multiply
        let s = set(&[2, 4]);
        assert!(!is_k_primitive(&s, 2).unwrap().primitive);
        assert!(check_primitive(&s, 2, Variant::Main, &opts).unwrap().primitive);
        let s = set(&[2, 4, 7]);
        let out = check_primitive(&s, 2, Variant::Main, &opts).unwrap();
        assert_eq!(out.witness.unwrap().factors.len(), 2);
    }

    #[test]
    fn size_cap_and_k_zero() {
        let big = CandidateSet::new(2..80).unwrap();
        assert!(matches!(is_k_primitive(&big, 2), Err(Error::SizeCap { size: 78, cap: 64 })));
        assert!(is_k_primitive(&set(&[2, 3]), 0).is_err());
    }

    #[test]
    fn randomized_refutation() {
        let big = CandidateSet::new((2..80).chain([4096])).unwrap();
        match refute_randomized(&big, 2, Variant::Main, 1000, 7).unwrap() {
            RandomVerdict::Refuted(w) => assert!(w.is_valid(Variant::Main)),
            RandomVerdict::Unknown => panic!("should refute"),
        }
        let primes = CandidateSet::new([2, 3, 5, 7, 11]).unwrap();
        assert_eq!(refute_randomized(&primes, 3, Variant::Strong, 100, 1).unwrap(), RandomVerdict::Unknown);
    }

    #[test]
    fn incremental_violation_matches_full_check() {
        let base: Vec<FactoredInt> = [6u64, 10].iter().map(|&n| factor(n).unwrap()).collect();
        let w = violation_with(&base, &factor(15).unwrap(), 2, Variant::Main).unwrap();
        assert!(w.is_valid(Variant::Main));
        assert!(violation_with(&base, &factor(7).unwrap(), 2, Variant::Main).is_none());
        // 4 as divisor of 6*10 only once 4 joins
        let w = violation_with(&base, &factor(4).unwrap(), 2, Variant::Main).unwrap();
        assert_eq!(w.divisor, 4);
    }

    #[test]
    fn ysmall_examples() {
        let r = check_ysmall(&set(&[4, 9]), 2, &YSMALL_DEFAULT_LAMBDAS).unwrap();
        assert!(r.passed());
        assert_eq!(r.assignment, vec![(4, 2), (9, 3)]);
        let at_one = &r.sums[2];
        assert!((at_one.lhs - (0.25 + 1.0 / 9.0)).abs() < 1e-15);
        assert!((at_one.rhs - (0.5 + 1.0 / 3.0)).abs() < 1e-15);
        let r = check_ysmall(&set(&[7]), 2, &YSMALL_DEFAULT_LAMBDAS).unwrap();
        assert!(r.passed());
        // precondition failure is reported, not raised
        let r = check_ysmall(&set(&[4, 9, 6]), 2, &YSMALL_DEFAULT_LAMBDAS).unwrap();
        assert_eq!(r.lcm_primitive, Some(false));
        assert!(!r.passed());
    }
}
