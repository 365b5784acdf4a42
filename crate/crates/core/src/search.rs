//! Exact maximisation of `sum n^-lambda` over primitive subsets of `[2, N]`
//! and a lower-bound construction mixing large primes with products of
//! small ones.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::Variant;
use crate::primes::PrimeTable;
use crate::primitivity::{factor, violation_with, CandidateSet, FactoredInt};
use crate::report::MarginReport;

/// Largest `N` for which the search is expected to finish exactly.
pub const EXACT_MODE_MAX_N: u64 = 100;
pub const DEFAULT_BUDGET: u64 = 10_000_000;
const IMPROVEMENT_REL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub n: u64,
    pub lam: f64,
    pub k: usize,
    pub variant: Variant,
    pub best_set: Vec<u64>,
    pub best_value: f64,
    pub prime_value: f64,
    /// The search space was exhausted within the budget.
    pub optimal: bool,
    pub nodes: u64,
}

impl SearchResult {
    /// The primes up to `N` are (one of) the best sets.
    pub fn primes_win(&self) -> bool {
        self.best_value <= self.prime_value * (1.0 + IMPROVEMENT_REL)
    }
}

struct Searcher {
    k: usize,
    variant: Variant,
    weights: Vec<f64>,
    cands: Vec<FactoredInt>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best_value: f64,
    best: Vec<usize>,
    current: Vec<usize>,
    current_members: Vec<FactoredInt>,
}

impl Searcher {
    /// `open` lists candidate indices (increasing) that can each still be
    /// added to the current set on their own.
    fn go(&mut self, value: f64, open: &[usize]) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if value > self.best_value * (1.0 + IMPROVEMENT_REL) + f64::MIN_POSITIVE {
            self.best_value = value;
            self.best = self.current.clone();
        }
        let Some((&first, rest)) = open.split_first() else {
            return;
        };
        let bound: f64 = value + open.iter().map(|&i| self.weights[i]).sum::<f64>();
        if bound <= self.best_value * (1.0 + IMPROVEMENT_REL) {
            return;
        }
        // include `first`: it is feasible by construction of `open`
        let cand = self.cands[first].clone();
        self.current_members.push(cand);
        self.current.push(first);
        let still_open: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&i| violation_with(&self.current_members, &self.cands[i], self.k, self.variant).is_none())
            .collect();
        self.go(value + self.weights[first], &still_open);
        self.current.pop();
        self.current_members.pop();
        if self.exhausted {
            return;
        }
        self.go(value, rest);
    }
}

/// Branch and bound over subsets of `[2, N]` that are k-primitive in the
/// given notion. The primes seed the incumbent and are replaced only by a
/// strictly better set (relative improvement above 1e-12). When the node
/// budget runs out the best set so far is returned with `optimal = false`.
pub fn max_weighted_sum(n: u64, lam: f64, k: usize, variant: Variant, budget: u64) -> Result<SearchResult> {
    if n < 2 {
        return Err(Error::Domain(format!("N must be >= 2, got {n}")));
    }
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    if !(lam >= 0.0 && lam.is_finite()) {
        return Err(Error::Domain(format!("lambda must be a finite nonnegative number, got {lam}")));
    }
    if n > 1_000_000 {
        return Err(Error::Resource {
            what: "search bound N",
            requested: n,
            cap: 1_000_000,
        });
    }
    let mut cands: Vec<FactoredInt> = (2..=n).map(factor).collect::<Result<_>>()?;
    // heaviest first; ties (lambda = 0) by increasing n
    cands.sort_by(|a, b| a.n().cmp(&b.n()));
    let weights: Vec<f64> = cands.iter().map(|c| (c.n() as f64).powf(-lam)).collect();
    let primes: Vec<usize> = (0..cands.len()).filter(|&i| cands[i].is_prime()).collect();
    let prime_value: f64 = primes.iter().map(|&i| weights[i]).sum();
    let mut s = Searcher {
        k,
        variant,
        weights,
        cands,
        budget,
        nodes: 0,
        exhausted: false,
        best_value: prime_value,
        best: primes,
        current: Vec::new(),
        current_members: Vec::new(),
    };
    let open: Vec<usize> = (0..s.cands.len()).collect();
    s.go(0.0, &open);
    let mut best_set: Vec<u64> = s.best.iter().map(|&i| s.cands[i].n()).collect();
    best_set.sort_unstable();
    Ok(SearchResult {
        n,
        lam,
        k,
        variant,
        best_set,
        best_value: s.best_value,
        prime_value,
        optimal: !s.exhausted,
        nodes: s.nodes,
    })
}

/// Interval `[lo, hi]` containing the finite-N critical exponent: the least
/// lambda for which the primes maximise the weighted sum over `[2, N]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauBracket {
    pub lo: f64,
    pub hi: f64,
}

pub const TAU_SEARCH_MAX: f64 = 2.0;
const TAU_GRID_STEPS: usize = 16;

/// Bisection on lambda of "the primes win". The predicate is first sampled
/// on a coarse grid of `[0, 2]`; a win followed by a loss means the search
/// is broken and is reported as an internal error. If the primes already
/// win at 0 the bracket collapses to `[0, 0]`.
pub fn bracket_tau(n: u64, k: usize, variant: Variant, tol: f64) -> Result<TauBracket> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if n > EXACT_MODE_MAX_N {
        return Err(Error::Resource {
            what: "exact-mode N",
            requested: n,
            cap: EXACT_MODE_MAX_N,
        });
    }
    let wins = |lam: f64| -> Result<bool> {
        let r = max_weighted_sum(n, lam, k, variant, DEFAULT_BUDGET)?;
        if !r.optimal {
            return Err(Error::Resource {
                what: "search nodes",
                requested: r.nodes,
                cap: DEFAULT_BUDGET,
            });
        }
        Ok(r.primes_win())
    };
    let grid: Vec<f64> = (0..=TAU_GRID_STEPS)
        .map(|i| TAU_SEARCH_MAX * i as f64 / TAU_GRID_STEPS as f64)
        .collect();
    let mut verdicts = Vec::with_capacity(grid.len());
    for &g in &grid {
        verdicts.push(wins(g)?);
    }
    if let Some(i) = (1..verdicts.len()).find(|&i| verdicts[i - 1] && !verdicts[i]) {
        return Err(Error::Internal(format!(
            "primes win at lambda = {} but lose at {}",
            grid[i - 1],
            grid[i]
        )));
    }
    if verdicts[0] {
        return Ok(TauBracket { lo: 0.0, hi: 0.0 });
    }
    let first_win = verdicts.iter().position(|&v| v).ok_or_else(|| {
        Error::Domain(format!("primes do not win anywhere on [0, {TAU_SEARCH_MAX}]"))
    })?;
    let (mut lo, mut hi) = (grid[first_win - 1], grid[first_win]);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if wins(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(TauBracket { lo, hi })
}

pub const CGS_MAX_X: u64 = 10_000_000;

/// Primes above `x^(1/(k+1))` together with products of `k+1` distinct
/// primes at most `x^(1/(k+1))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CgsConstruction {
    pub x: u64,
    pub k: usize,
    /// `floor(x^(1/(k+1)))`.
    pub root: u64,
    /// `floor(x^(2/(k+1)) / (8 (k log x)^2))`.
    pub target: u64,
    pub products: Vec<u64>,
    pub large_prime_count: usize,
    pub shortfall: bool,
    /// For each lambda: the constructed sum against `sum_{p <= x} p^-lam`.
    pub reports: Vec<MarginReport>,
    #[serde(skip)]
    pub large_primes: Vec<u64>,
}

impl CgsConstruction {
    pub fn set(&self) -> Result<CandidateSet> {
        CandidateSet::new(self.large_primes.iter().chain(&self.products).copied())
    }
}

/// Largest `r` with `r^e <= x`.
fn integer_root(x: u64, e: u32) -> u64 {
    let mut r = (x as f64).powf(1.0 / e as f64).round() as u64;
    while r > 0 && (r as u128).pow(e) > x as u128 {
        r -= 1;
    }
    while ((r + 1) as u128).pow(e) <= x as u128 {
        r += 1;
    }
    r
}

/// Builds the construction greedily: candidate products in increasing order
/// are kept while they leave the product part k-primitive. The large primes
/// are coprime to every product and cannot divide anything else in the set,
/// so only the product part needs checking. The report compares both sides
/// for each `lam`; it does not expect the construction to win at desk scale.
pub fn cgs_construct(x: u64, k: usize, table: &PrimeTable, lams: &[f64]) -> Result<CgsConstruction> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    let floor = 1u64.checked_shl(k as u32 + 1).unwrap_or(u64::MAX);
    if x < floor {
        return Err(Error::Domain(format!("x must be at least 2^(k+1) = {floor}")));
    }
    if x > CGS_MAX_X {
        return Err(Error::Resource {
            what: "construction bound x",
            requested: x,
            cap: CGS_MAX_X,
        });
    }
    if table.limit() < x {
        return Err(Error::OutOfRange {
            what: format!("primes up to {x}"),
            required_limit: x,
        });
    }
    let e = k as u32 + 1;
    let root = integer_root(x, e);
    let xf = x as f64;
    let target = (xf.powf(2.0 / e as f64) / (8.0 * (k as f64 * xf.ln()).powi(2))).floor() as u64;
    let small = table.primes_up_to(root as f64)?.to_vec();
    let large_primes: Vec<u64> = table.primes_up_to(xf)?.iter().copied().filter(|&p| p > root).collect();

    let mut pool = Vec::new();
    products_of_distinct(&small, e as usize, 0, 1, x, &mut pool);
    pool.sort_unstable();
    let mut chosen: Vec<FactoredInt> = Vec::new();
    for v in pool {
        if chosen.len() as u64 >= target {
            break;
        }
        let f = factor(v)?;
        if violation_with(&chosen, &f, k, Variant::Main).is_none() {
            chosen.push(f);
        }
    }
    let products: Vec<u64> = chosen.iter().map(|f| f.n()).collect();

    let mut reports = Vec::new();
    for &lam in lams {
        let built: f64 = large_primes
            .iter()
            .chain(&products)
            .map(|&a| (a as f64).powf(-lam))
            .sum();
        let above: f64 = large_primes.iter().map(|&p| (p as f64).powf(-lam)).sum();
        let below: f64 = small.iter().map(|&p| (p as f64).powf(-lam)).sum();
        reports.push(
            MarginReport::less("cgs_beat", above + below, built)
                .with_k(k as u64)
                .with_x(xf)
                .term("lam", lam)
                .term("large_prime_sum", above)
                .term("small_prime_sum", below)
                .term("product_sum", built - above)
                .claim("sum over the construction > sum_{p <= x} p^-lam"),
        );
    }
    Ok(CgsConstruction {
        x,
        k,
        root,
        target,
        shortfall: (products.len() as u64) < target,
        products,
        large_prime_count: large_primes.len(),
        reports,
        large_primes,
    })
}

fn products_of_distinct(primes: &[u64], left: usize, start: usize, acc: u64, x: u64, out: &mut Vec<u64>) {
    if left == 0 {
        out.push(acc);
        return;
    }
    for i in start..primes.len() {
        match acc.checked_mul(primes[i]) {
            Some(v) if v <= x => products_of_distinct(primes, left - 1, i + 1, v, x, out),
            _ => break,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let r = max_weighted_sum(10, 1.2, 1, Variant::Main, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.best_set, vec![2, 3, 5, 7]);
        assert!(r.optimal && r.primes_win());
        let r = max_weighted_sum(10, 0.0, 1, Variant::Main, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.best_value, 5.0);
        assert_eq!(r.prime_value, 4.0);
        assert_eq!(r.best_set.len(), 5);
        for v in Variant::ALL {
            let r = max_weighted_sum(2, 0.7, 3, v, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.best_set, vec![2]);
            assert!(r.optimal);
        }
    }

    #[test]
    fn budget_exhaustion_is_not_an_error() {
        let r = max_weighted_sum(40, 0.3, 1, Variant::Main, 50).unwrap();
        assert!(!r.optimal);
        assert_eq!(r.nodes, 50);
        assert!(r.best_value >= r.prime_value);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_tau(4, 1, Variant::Main, 1e-3).unwrap(), TauBracket { lo: 0.0, hi: 0.0 });
        let b = bracket_tau(10, 1, Variant::Main, 1e-3).unwrap();
        assert!(b.hi - b.lo <= 1e-3);
        assert!(b.hi <= 1.1403 + 1e-3);
        let wide = bracket_tau(10, 1, Variant::Main, 1e-2).unwrap();
        assert!(wide.lo <= b.lo + 1e-12 && b.hi <= wide.hi + 1e-12);
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(4096, 2), 64);
        assert_eq!(integer_root(4095, 2), 63);
        assert_eq!(integer_root(1_000_000, 3), 100);
        assert_eq!(integer_root(999_999, 3), 99);
    }

    #[test]
    fn cgs_small_case() {
        let table = PrimeTable::sieve(10_000).unwrap();
        let c = cgs_construct(4096, 1, &table, &[0.9]).unwrap();
        assert_eq!((c.root, c.target), (64, 7));
        assert_eq!(c.products, vec![6, 10, 14, 15, 21, 22, 26]);
        assert!(!c.shortfall);
        let set = c.set().unwrap();
        assert!(set.members().iter().all(|m| m.n() > 64 || !m.is_prime()));
        assert_eq!(c.reports.len(), 1);
        assert!(cgs_construct(3, 1, &table, &[]).is_err());
    }
}
