//! Block splitting of smooth integers and the derived maps that turn a
//! k-primitive set into a (k-1)-primitive one.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::Variant;
use crate::primitivity::{check_primitive, factor, violation_with, CandidateSet, FactoredInt, PrimitivityOptions, DEFAULT_SET_CAP};

/// A factorization `t = m_1 * ... * m_l` into blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSplit {
    pub t: u64,
    pub blocks: Vec<u64>,
}

impl BlockSplit {
    pub fn l(&self) -> usize {
        self.blocks.len()
    }

    pub fn product(&self) -> u128 {
        self.blocks.iter().map(|&b| b as u128).product()
    }

    /// Largest allowed block size `z^(1/k + theta)`.
    pub fn block_bound(z: u64, k: usize, theta: f64) -> f64 {
        (z as f64).powf(1.0 / k as f64 + theta)
    }
}

/// `m^k <= z` without floating point.
fn kth_power_at_most(m: u64, k: usize, z: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(m as u128);
        if acc > z as u128 {
            return false;
        }
    }
    true
}

fn check_split_inputs(t: &FactoredInt, z: u64, k: usize, theta: f64, top: u64, what: &str) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    if !(theta > 0.0 && theta <= 1.0 / k as f64 + 1e-12) {
        return Err(Error::Domain(format!("theta must lie in (0, 1/k], got {theta}")));
    }
    if t.n() > z {
        return Err(Error::Domain(format!("t = {} exceeds z = {z}", t.n())));
    }
    if (top as f64) >= (z as f64).powf(theta) {
        return Err(Error::Smoothness(format!(
            "{what}({}) = {top} is not below z^theta = {:.6}",
            t.n(),
            (z as f64).powf(theta)
        )));
    }
    Ok(())
}

/// Greedy grouping: extend the current block while its product stays at most
/// `z^(1/k)`, then take one more part and close the block.
fn greedy_blocks(parts: &[u64], z: u64, k: usize) -> Vec<u64> {
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let mut m = parts[i];
        i += 1;
        while i < parts.len() && kth_power_at_most(m, k, z) {
            m *= parts[i];
            i += 1;
        }
        blocks.push(m);
    }
    blocks
}

/// Splits `t` into pairwise coprime blocks built from its prime powers in
/// decreasing order. Requires `Q(t) < z^theta`.
pub fn split_blocks_q(t: &FactoredInt, z: u64, k: usize, theta: f64) -> Result<BlockSplit> {
    check_split_inputs(t, z, k, theta, t.largest_prime_power(), "Q")?;
    if kth_power_at_most(t.n(), k, z) {
        return Ok(BlockSplit {
            t: t.n(),
            blocks: vec![t.n()],
        });
    }
    let mut parts: Vec<u64> = t.factors().iter().map(|&(p, e)| p.pow(e)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(BlockSplit {
        t: t.n(),
        blocks: greedy_blocks(&parts, z, k),
    })
}

/// Splits `t` into blocks built from its primes with repetition, largest
/// first. Requires `P(t) < z^theta`; blocks need not be coprime.
pub fn split_blocks_p(t: &FactoredInt, z: u64, k: usize, theta: f64) -> Result<BlockSplit> {
    check_split_inputs(t, z, k, theta, t.largest_prime(), "P")?;
    if kth_power_at_most(t.n(), k, z) {
        return Ok(BlockSplit {
            t: t.n(),
            blocks: vec![t.n()],
        });
    }
    let mut parts: Vec<u64> = t
        .factors()
        .iter()
        .flat_map(|&(p, e)| std::iter::repeat_n(p, e as usize))
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(BlockSplit {
        t: t.n(),
        blocks: greedy_blocks(&parts, z, k),
    })
}

/// The partition of the input and the map `t -> f(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedMapResult {
    pub notion: Variant,
    pub k: usize,
    /// Members mapped by the first rule (`Q(t)` for lcm; all members for strong).
    pub t_prime: Vec<u64>,
    /// Members mapped by the second rule (`t/Q(t)` for lcm).
    pub t_double_prime: Vec<u64>,
    pub image: BTreeMap<u64, u64>,
    pub image_set: Vec<u64>,
    /// Whether the coprime-proper-prime-power property of `f(T')` was checked.
    pub prime_power_check: bool,
}

fn require_composites(set: &CandidateSet) -> Result<()> {
    match set.members().iter().find(|m| m.is_prime()) {
        Some(p) => Err(Error::Precondition(format!("member {} is prime; the derived map needs composites", p.n()))),
        None => Ok(()),
    }
}

fn require_primitive(set: &CandidateSet, k: usize, notion: Variant) -> Result<()> {
    if set.len() > DEFAULT_SET_CAP {
        return Ok(());
    }
    let out = check_primitive(set, k, notion, &PrimitivityOptions::default())?;
    match out.witness {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "input is not {notion} {k}-primitive: {} divides {:?}",
            w.divisor, w.factors
        ))),
    }
}

/// Primes `p` with `|T_p| < 2`, i.e. dividing exactly one member.
pub fn lonely_primes(set: &CandidateSet) -> Vec<u64> {
    set.support()
        .iter()
        .copied()
        .filter(|&p| set.members().iter().filter(|m| m.n() % p == 0).count() < 2)
        .collect()
}

fn verify_image(
    image: &BTreeMap<u64, u64>,
    k: usize,
    notion: Variant,
) -> Result<CandidateSet> {
    let mut seen: BTreeMap<u64, u64> = BTreeMap::new();
    for (&t, &v) in image {
        if let Some(prev) = seen.insert(v, t) {
            return Err(Error::Internal(format!("derived map is not injective: f({prev}) = f({t}) = {v}")));
        }
    }
    let image_set = CandidateSet::new(image.values().copied())?;
    if k >= 2 && image_set.len() <= DEFAULT_SET_CAP {
        let out = check_primitive(&image_set, k - 1, notion, &PrimitivityOptions::default())?;
        if let Some(w) = out.witness {
            return Err(Error::Internal(format!(
                "image is not {notion} {}-primitive: {} divides {:?}",
                k - 1,
                w.divisor,
                w.factors
            )));
        }
    }
    Ok(image_set)
}

/// `f(t) = Q(t)` unless `Q(t)` divides another member, in which case
/// `f(t) = t/Q(t)`. Re-verifies injectivity and lcm (k-1)-primitivity of
/// the image; when every prime of the input divides at least two members,
/// also checks that `f(T')` consists of pairwise coprime proper prime powers.
pub fn derive_map_lcm(set: &CandidateSet, k: usize) -> Result<DerivedMapResult> {
    if k < 2 {
        return Err(Error::Domain("the derived map needs k >= 2".into()));
    }
    require_composites(set)?;
    require_primitive(set, k, Variant::Lcm)?;
    let mut result = DerivedMapResult {
        notion: Variant::Lcm,
        k,
        t_prime: Vec::new(),
        t_double_prime: Vec::new(),
        image: BTreeMap::new(),
        image_set: Vec::new(),
        prime_power_check: false,
    };
    for t in set.members() {
        let q = t.largest_prime_power();
        let elsewhere = set.members().iter().any(|s| s.n() != t.n() && s.n() % q == 0);
        if elsewhere {
            result.t_double_prime.push(t.n());
            result.image.insert(t.n(), t.n() / q);
        } else {
            result.t_prime.push(t.n());
            result.image.insert(t.n(), q);
        }
    }
    let image_set = verify_image(&result.image, k, Variant::Lcm)?;
    result.image_set = image_set.values();
    if lonely_primes(set).is_empty() {
        result.prime_power_check = true;
        let heads: Vec<FactoredInt> = result.t_prime.iter().map(|t| factor(result.image[t])).collect::<Result<_>>()?;
        if let Some(h) = heads.iter().find(|h| !h.is_proper_prime_power()) {
            return Err(Error::Internal(format!("f(T') member {} is not a proper prime power", h.n())));
        }
        for (i, a) in heads.iter().enumerate() {
            if let Some(b) = heads[i + 1..].iter().find(|b| a.shares_prime_with(b)) {
                return Err(Error::Internal(format!("f(T') members {} and {} are not coprime", a.n(), b.n())));
            }
        }
    }
    Ok(result)
}

/// `f(t) = t/P(t)`. Requires every prime of the input to divide at least
/// two members; re-verifies injectivity and strong (k-1)-primitivity.
pub fn derive_map_strong(set: &CandidateSet, k: usize) -> Result<DerivedMapResult> {
    if k < 2 {
        return Err(Error::Domain("the derived map needs k >= 2".into()));
    }
    require_composites(set)?;
    if let Some(&p) = lonely_primes(set).first() {
        return Err(Error::Precondition(format!("prime {p} divides fewer than two members")));
    }
    require_primitive(set, k, Variant::Strong)?;
    let image: BTreeMap<u64, u64> = set.members().iter().map(|t| (t.n(), t.n() / t.largest_prime())).collect();
    let image_set = verify_image(&image, k, Variant::Strong)?;
    Ok(DerivedMapResult {
        notion: Variant::Strong,
        k,
        t_prime: set.values(),
        t_double_prime: Vec::new(),
        image,
        image_set: image_set.values(),
        prime_power_check: false,
    })
}

/// Draws a random k-primitive set of composites in `[4, max_n]` of the given
/// notion by greedy insertion from a shuffled pool. The pool is restricted
/// to a random support of two to five primes below 30 so that primes are
/// shared between members often enough to be interesting. With `two_per_prime`,
/// members carrying a prime that divides no other member are pruned until
/// none remain (pruning keeps the set primitive).
pub fn random_valid_set<R: Rng>(
    rng: &mut R,
    notion: Variant,
    k: usize,
    max_n: u64,
    max_size: usize,
    two_per_prime: bool,
) -> Result<CandidateSet> {
    let mut support = vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    support.shuffle(rng);
    support.truncate(rng.gen_range(2..=5));
    let mut pool: Vec<FactoredInt> = (4..=max_n).map(factor).collect::<Result<Vec<_>>>()?;
    pool.retain(|f| !f.is_prime() && f.primes().all(|p| support.contains(&p)));
    pool.shuffle(rng);
    let target = rng.gen_range(1..=max_size);
    let mut chosen: Vec<FactoredInt> = Vec::new();
    for cand in pool {
        if chosen.len() >= target {
            break;
        }
        if violation_with(&chosen, &cand, k, notion).is_none() {
            chosen.push(cand);
            chosen.sort();
        }
    }
    if two_per_prime {
        loop {
            let set = CandidateSet::from_factored(chosen.clone());
            let lonely = lonely_primes(&set);
            if lonely.is_empty() {
                break;
            }
            chosen.retain(|m| !lonely.iter().any(|&p| m.n() % p == 0));
        }
    }
    Ok(CandidateSet::from_factored(chosen))
}

/// Draws a random strongly k-primitive set in which every prime divides at
/// least two members. Each member gets its own dominant prime whose exponent
/// is about `k` times that of any other member; the exponent is sometimes
/// lowered by one, and candidates are kept only if the exact predicate
/// accepts them.
pub fn random_strong_set<R: Rng>(rng: &mut R, k: usize) -> Result<CandidateSet> {
    const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
    loop {
        let r = rng.gen_range(2..=4);
        let mut primes = PRIMES.to_vec();
        primes.shuffle(rng);
        primes.truncate(r);
        let m = rng.gen_range(2..=r);
        // exps[i][j]: exponent of primes[j] in member i; member i dominates primes[i]
        let mut exps = vec![vec![0u32; r]; m];
        for (i, row) in exps.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                if j != i {
                    *e = rng.gen_range(0..=1);
                }
            }
        }
        for j in 0..r {
            let holders = (0..m).filter(|&i| i == j || exps[i][j] > 0).count();
            if holders < 2 {
                let other = (0..m).find(|&i| i != j).expect("m >= 2");
                exps[other][j] = 1;
            }
        }
        for i in 0..m {
            let top = (0..m).filter(|&o| o != i).map(|o| exps[o][i]).max().unwrap_or(0);
            let lowered = u32::from(rng.gen_bool(0.25));
            exps[i][i] = (k as u32 * top + 1).saturating_sub(lowered).max(2);
        }
        let values: Option<Vec<u64>> = exps
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&primes)
                    .try_fold(1u64, |acc, (&e, &p)| acc.checked_mul(p.checked_pow(e)?))
                    .filter(|&v| v <= crate::primitivity::FACTOR_LIMIT)
            })
            .collect();
        let Some(values) = values else { continue };
        let set = CandidateSet::new(values)?;
        if set.len() < 2 || !lonely_primes(&set).is_empty() {
            continue;
        }
        if check_primitive(&set, k, Variant::Strong, &PrimitivityOptions::default())?.primitive {
            return Ok(set);
        }
    }
}

/// Tally of a seeded property run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertySummary {
    pub property: String,
    pub seed: u64,
    pub trials: usize,
    /// Trials where no non-empty input was drawn within the redraw limit.
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl PropertySummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_REDRAWS: usize = 100;

/// Runs the derived map of `notion` (lcm or strong) on `trials` random valid
/// inputs and records any failed assertion.
pub fn derived_map_trials(notion: Variant, trials: usize, seed: u64) -> Result<PropertySummary> {
    if notion == Variant::Main {
        return Err(Error::Domain("derived-map trials cover the lcm and strong notions".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = PropertySummary {
        property: format!("derive_map_{notion}"),
        seed,
        trials,
        skipped: 0,
        violations: Vec::new(),
    };
    for _ in 0..trials {
        let k = rng.gen_range(2..=4);
        let set = match notion {
            Variant::Strong => random_strong_set(&mut rng, k)?,
            _ => {
                let two = rng.gen_bool(0.5);
                let mut drawn = CandidateSet::new([])?;
                for _ in 0..MAX_REDRAWS {
                    drawn = random_valid_set(&mut rng, notion, k, 400, 8, two)?;
                    if !drawn.is_empty() {
                        break;
                    }
                }
                drawn
            }
        };
        if set.is_empty() {
            summary.skipped += 1;
            continue;
        }
        let outcome = match notion {
            Variant::Lcm => derive_map_lcm(&set, k),
            _ => derive_map_strong(&set, k),
        };
        if let Err(e) = outcome {
            summary.violations.push(format!("k={k} set={:?}: {e}", set.values()));
        }
    }
    Ok(summary)
}

/// Checks both splitters on random smooth integers: products reconstruct
/// `t`, at most `k` blocks, each at most `z^(1/k + theta)`, and coprime
/// blocks for the prime-power variant.
pub fn block_split_trials(trials: usize, seed: u64) -> Result<PropertySummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = PropertySummary {
        property: "block_split".into(),
        seed,
        trials,
        skipped: 0,
        violations: Vec::new(),
    };
    for _ in 0..trials {
        let k = rng.gen_range(1..=5);
        let theta = rng.gen_range(0.05..=1.0 / k as f64);
        let t = factor(rng.gen_range(2..=1_000_000u64))?;
        let z = rng.gen_range(t.n()..=t.n().saturating_mul(50));
        let bound = BlockSplit::block_bound(z, k, theta) * (1.0 + 1e-12);
        for (coprime, split) in [(true, split_blocks_q(&t, z, k, theta)), (false, split_blocks_p(&t, z, k, theta))] {
            let split = match split {
                Ok(s) => s,
                Err(Error::Smoothness(_)) => continue,
                Err(e) => return Err(e),
            };
            let mut bad = Vec::new();
            if split.product() != t.n() as u128 {
                bad.push("product");
            }
            if split.l() > k {
                bad.push("count");
            }
            if split.blocks.iter().any(|&b| b as f64 > bound) {
                bad.push("size");
            }
            if coprime && !pairwise_coprime(&split.blocks) {
                bad.push("coprime");
            }
            if !bad.is_empty() {
                summary.violations.push(format!("t={} z={z} k={k} theta={theta}: {bad:?} {:?}", t.n(), split.blocks));
            }
        }
    }
    Ok(summary)
}

fn pairwise_coprime(v: &[u64]) -> bool {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    v.iter().enumerate().all(|(i, &a)| v[i + 1..].iter().all(|&b| gcd(a, b) == 1))
}

/// Largest lcm k-primitive subset of the `Q`-smooth integers
/// (`Q(t) < t^theta`) in `[2, z]`, found exhaustively, against `z^(1/k + theta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothCountCheck {
    pub z: u64,
    pub k: usize,
    pub theta: f64,
    pub candidates: Vec<u64>,
    pub max_set: Vec<u64>,
    pub bound: f64,
}

impl SmoothCountCheck {
    pub fn passed(&self) -> bool {
        (self.max_set.len() as f64) <= self.bound
    }
}

pub fn smooth_count_check(z: u64, k: usize, theta: f64) -> Result<SmoothCountCheck> {
    if k < 2 || z < 2 {
        return Err(Error::Domain("smooth count check needs k >= 2 and z >= 2".into()));
    }
    let candidates: Vec<FactoredInt> = (2..=z)
        .map(factor)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|t| (t.largest_prime_power() as f64) < (t.n() as f64).powf(theta))
        .collect();
    let mut best: Vec<FactoredInt> = Vec::new();
    let mut current: Vec<FactoredInt> = Vec::new();
    fn go(cands: &[FactoredInt], i: usize, k: usize, current: &mut Vec<FactoredInt>, best: &mut Vec<FactoredInt>) {
        if current.len() + (cands.len() - i) <= best.len() {
            return;
        }
        if i == cands.len() {
            *best = current.clone();
            return;
        }
        if violation_with(current, &cands[i], k, Variant::Lcm).is_none() {
            current.push(cands[i].clone());
            go(cands, i + 1, k, current, best);
            current.pop();
        }
        go(cands, i + 1, k, current, best);
    }
    go(&candidates, 0, k, &mut current, &mut best);
    Ok(SmoothCountCheck {
        z,
        k,
        theta,
        candidates: candidates.iter().map(|c| c.n()).collect(),
        max_set: best.iter().map(|c| c.n()).collect(),
        bound: (z as f64).powf(1.0 / k as f64 + theta),
    })
}
