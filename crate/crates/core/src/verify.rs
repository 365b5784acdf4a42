//! Numeric checks behind the exponent bounds, one [`MarginReport`] per
//! inequality and index.
//!
//! Sums over primes use
//! `S(Y) = sum_{p<=Y} ((p^-2l - p^-2l') - (p^-l - p^-l'))` with
//! `l = lambda(k)` and `l' = lambda(k-1)`, and the smooth-member tail
//! `l/(l - 1/k - theta) * p_{nu+1}^(-nu (l - 1/k - theta))`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::{ExponentSchedule, Variant};
use crate::primes::PrimeTable;
use crate::primitivity::{check_ysmall, factor, violation_with, CandidateSet, FactoredInt, YSmallReport};

pub use crate::report::MarginReport;

/// First index at which the main and lcm negativity margins are claimed.
pub const MARGIN_FROM: usize = 200;
pub const MAIN_CLAIM2_MARGIN: f64 = 0.015;
pub const LCM_CLAIM2_MARGIN: f64 = 0.035;
pub const MAIN_GAP_CONST: f64 = 1.4;
pub const LCM_GAP_CONST: f64 = 1.6;
pub const TAIL_RATIO_CAP: f64 = 1.05;
pub const STRONG_FROM: usize = 39;

fn finite_range_start(variant: Variant) -> Result<usize> {
    match variant {
        Variant::Main => Ok(3),
        Variant::Lcm => Ok(2),
        Variant::Strong => Err(Error::Domain("this check covers the main and lcm schedules".into())),
    }
}

/// `S(Y)` summed term by term over primes in increasing order.
pub fn s_of_y(table: &PrimeTable, y: f64, lam: f64, lam_prime: f64) -> Result<f64> {
    if !(lam > 0.0 && lam <= lam_prime) {
        return Err(Error::Domain(format!("need 0 < lam <= lam', got {lam}, {lam_prime}")));
    }
    if y < 2.0 {
        return Ok(0.0);
    }
    Ok(table
        .primes_up_to(y)?
        .iter()
        .map(|&p| s_term(p as f64, lam, lam_prime))
        .sum())
}

fn s_term(p: f64, lam: f64, lam_prime: f64) -> f64 {
    let z = p.powf(-lam);
    let y = p.powf(-lam_prime);
    (z * z - y * y) - (z - y)
}

/// `S(Y)` as a combination of four prime power sums, for cross-checking.
pub fn s_of_y_via_power_sums(table: &PrimeTable, y: f64, lam: f64, lam_prime: f64) -> Result<f64> {
    Ok((table.prime_power_sum(y, 2.0 * lam)? - table.prime_power_sum(y, 2.0 * lam_prime)?)
        - (table.prime_power_sum(y, lam)? - table.prime_power_sum(y, lam_prime)?))
}

/// Decrease of `S(p_j)` in `j` for `k <= j < j_max` at fixed exponents
/// `lambda(k)`, `lambda(k-1)`, together with the term condition
/// `p_k^-lambda(k) <= 1/3` that makes every later term negative.
pub fn claim1_check(table: &PrimeTable, k: usize, j_max: usize, variant: Variant) -> Result<Vec<MarginReport>> {
    let from = finite_range_start(variant)?;
    if k < 2 {
        return Err(Error::Domain("claim needs k >= 2".into()));
    }
    let sched = ExponentSchedule::new(variant, table);
    let (lam, lam_prime) = (sched.lambda(k)?, sched.lambda(k - 1)?);
    let pk = sched.prime(k)? as f64;
    let mut out = vec![MarginReport::less_eq("claim1_term_condition", pk.powf(-lam), 1.0 / 3.0)
        .with_k(k as u64)
        .with_variant(variant)
        .term("p_k", pk)
        .term("lambda", lam)
        .claim("p^-lambda(k) <= 1/3 for p >= p_k")
        .not_applicable_unless(k >= from)];
    let mut s = s_of_y(table, pk, lam, lam_prime)?;
    for j in k..j_max {
        let p_next = sched.prime(j + 1)? as f64;
        let next = s + s_term(p_next, lam, lam_prime);
        out.push(
            MarginReport::less("claim1_decreasing", next, s)
                .with_k(k as u64)
                .with_x(p_next)
                .with_variant(variant)
                .term("j", j as f64)
                .term("s_p_j", s)
                .term("s_p_j_plus_1", next)
                .claim("S(p_{j+1}) < S(p_j) for j >= k")
                .not_applicable_unless(k >= from),
        );
        s = next;
    }
    Ok(out)
}

/// `S(p_k) < 0` on the finite range, and `S(p_k) < -c/log p_k` from
/// `k = 200` on (`c = 0.015` main, `0.035` lcm).
pub fn claim2_check(table: &PrimeTable, variant: Variant, k_from: usize, k_to: usize) -> Result<Vec<MarginReport>> {
    let from = finite_range_start(variant)?;
    if k_from < 2 {
        return Err(Error::Domain("claim needs k >= 2".into()));
    }
    let sched = ExponentSchedule::new(variant, table);
    let c = if variant == Variant::Main { MAIN_CLAIM2_MARGIN } else { LCM_CLAIM2_MARGIN };
    let mut out = Vec::new();
    for k in k_from..=k_to {
        let (lam, lam_prime) = (sched.lambda(k)?, sched.lambda(k - 1)?);
        let pk = sched.prime(k)? as f64;
        let s = s_of_y(table, pk, lam, lam_prime)?;
        let report = if k >= MARGIN_FROM {
            let bound = -c / pk.ln();
            MarginReport::less("claim2_margin", s, bound)
                .term("margin_bound", bound)
                .claim(if variant == Variant::Main {
                    "S(p_k) < -0.015/log p_k for k >= 200"
                } else {
                    "S(p_k) < -0.035/log p_k for k >= 200"
                })
        } else {
            MarginReport::less("claim2_negative", s, 0.0)
                .claim("S(p_k) < 0 on the finite range")
                .not_applicable_unless(k >= from)
        };
        out.push(
            report
                .with_k(k as u64)
                .with_x(pk)
                .with_variant(variant)
                .term("lambda", lam)
                .term("lambda_prev", lam_prime)
                .term("s", s),
        );
    }
    Ok(out)
}

/// Pieces of the smooth-member tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothTail {
    pub lambda: f64,
    pub theta: f64,
    pub nu: f64,
    /// `lambda - 1/k - theta`.
    pub gap: f64,
    /// `lambda / gap`.
    pub ratio: f64,
    /// `p_{nu+1}` (main, lcm) or `p_{k+1}` (strong).
    pub base_prime: u64,
    /// `sum_{j<=k} p_j^(-nu lambda)`, strong schedule only.
    pub small_sum: f64,
    pub tail: f64,
}

impl SmoothTail {
    pub fn total(&self) -> f64 {
        self.small_sum + self.tail
    }

    /// `log(ratio * base^(-nu gap))`, finite even when the tail underflows.
    pub fn log_tail(&self) -> f64 {
        self.ratio.ln() - self.nu * self.gap * (self.base_prime as f64).ln()
    }
}

pub fn smooth_tail(k: usize, sched: &ExponentSchedule<'_>) -> Result<SmoothTail> {
    let table = sched.table();
    let (lam, theta, nu) = (sched.lambda(k)?, sched.theta(k)?, sched.nu(k)?);
    let gap = lam - 1.0 / k as f64 - theta;
    if !(gap > 0.0) {
        return Err(Error::Inapplicable(format!(
            "lambda - 1/k - theta = {gap} is not positive at k = {k}"
        )));
    }
    let ratio = lam / gap;
    let (base_prime, small_sum) = match sched.variant() {
        Variant::Strong => {
            let small = table.primes()[..k.min(table.len())]
                .iter()
                .map(|&p| (p as f64).powf(-nu * lam))
                .sum();
            (table.nth_prime(k + 1)?, small)
        }
        _ => (table.nth_prime(sched.nu_index(k)? + 1)?, 0.0),
    };
    let tail = ratio * (base_prime as f64).powf(-nu * gap);
    Ok(SmoothTail {
        lambda: lam,
        theta,
        nu,
        gap,
        ratio,
        base_prime,
        small_sum,
        tail,
    })
}

/// The closed-form bound on the sum over smooth members; for the strong
/// schedule this includes the small-member sum.
pub fn smooth_tail_term(k: usize, sched: &ExponentSchedule<'_>) -> Result<f64> {
    Ok(smooth_tail(k, sched)?.total())
}

/// `tail + S(p_{nu+1}) < 0`, the worst case over `Y`. Claimed for
/// `3 <= k <= 199` (main) and `2 <= k <= 199` (lcm).
pub fn i_bound_check(table: &PrimeTable, variant: Variant, k_from: usize, k_to: usize) -> Result<Vec<MarginReport>> {
    let from = finite_range_start(variant)?;
    let sched = ExponentSchedule::new(variant, table);
    let mut out = Vec::new();
    for k in k_from.max(2)..=k_to {
        let st = smooth_tail(k, &sched)?;
        let lam_prime = sched.lambda(k - 1)?;
        let y = st.base_prime as f64;
        let s = s_of_y(table, y, st.lambda, lam_prime)?;
        out.push(
            MarginReport::less("i_bound", st.tail + s, 0.0)
                .with_k(k as u64)
                .with_x(y)
                .with_variant(variant)
                .term("tail", st.tail)
                .term("s", s)
                .term("nu", st.nu)
                .term("gap", st.gap)
                .claim("lambda/(lambda-1/k-theta) p_{nu+1}^(-nu(lambda-1/k-theta)) + S(p_{nu+1}) < 0")
                .not_applicable_unless(k >= from && k < MARGIN_FROM),
        );
    }
    Ok(out)
}

/// For `k >= 200`: `lambda - 1/k - theta > c/log p_k`, `lambda/(lambda - 1/k - theta) < 1.05`,
/// tail `<= 1.05 exp(-c p_k)`, and `1.05 exp(-c p_k) < c2/log p_k` with
/// `(c, c2) = (1.4, 0.015)` main and `(1.6, 0.035)` lcm. The last two are
/// compared as logarithms.
pub fn asymptotic_leg_check(table: &PrimeTable, variant: Variant, k_from: usize, k_to: usize) -> Result<Vec<MarginReport>> {
    finite_range_start(variant)?;
    if k_from < MARGIN_FROM {
        return Err(Error::Domain(format!("the asymptotic legs start at k = {MARGIN_FROM}")));
    }
    let (c, c2) = if variant == Variant::Main {
        (MAIN_GAP_CONST, MAIN_CLAIM2_MARGIN)
    } else {
        (LCM_GAP_CONST, LCM_CLAIM2_MARGIN)
    };
    let sched = ExponentSchedule::new(variant, table);
    let mut out = Vec::new();
    for k in k_from..=k_to {
        let st = smooth_tail(k, &sched)?;
        let pk = sched.prime(k)? as f64;
        let log_pk = pk.ln();
        let tag = |r: MarginReport| r.with_k(k as u64).with_x(pk).with_variant(variant);
        out.push(tag(MarginReport::less("asym_gap", c / log_pk, st.gap)
            .term("c", c)
            .claim("lambda - 1/k - theta > c/log p_k")));
        out.push(tag(MarginReport::less("asym_ratio", st.ratio, TAIL_RATIO_CAP)
            .claim("lambda/(lambda - 1/k - theta) < 1.05")));
        let log_envelope = TAIL_RATIO_CAP.ln() - c * pk;
        out.push(tag(MarginReport::less_eq("asym_tail_log", st.log_tail(), log_envelope)
            .term("base_prime", st.base_prime as f64)
            .claim("log of tail <= log(1.05 exp(-c p_k))")));
        let log_margin = c2.ln() - log_pk.ln();
        out.push(tag(MarginReport::less("asym_tail_vs_margin_log", log_envelope, log_margin)
            .term("c2", c2)
            .claim("log(1.05 exp(-c p_k)) < log(c2/log p_k)")));
    }
    Ok(out)
}

/// Direct check of
/// `sum_{p<=p_k} p^(-nu l) + l/(l-1/k-theta) p_{k+1}^(-nu(l-1/k-theta)) < l' theta p_{k+1}^(1-l') (1 - 1/log p_{k+1})`
/// for the strong schedule, plus each bound used to derive it by hand.
pub fn strong_goal_check(table: &PrimeTable, k_from: usize, k_to: usize) -> Result<Vec<MarginReport>> {
    if k_from < STRONG_FROM {
        return Err(Error::Domain(format!("the strong goal is claimed from k = {STRONG_FROM}")));
    }
    let sched = ExponentSchedule::new(Variant::Strong, table);
    let mut out = Vec::new();
    for k in k_from..=k_to {
        let st = smooth_tail(k, &sched)?;
        let kf = k as f64;
        let log_k = kf.ln();
        let lam_prime = sched.lambda(k - 1)?;
        let (lam, theta, nu) = (st.lambda, st.theta, st.nu);
        let pk = sched.prime(k)? as f64;
        let pk1 = st.base_prime as f64;
        let lhs = st.total();
        let rhs = lam_prime * theta * pk1.powf(1.0 - lam_prime) * (1.0 - 1.0 / pk1.ln());
        let inv_k2 = kf.powi(-2);
        let tag = |r: MarginReport| r.with_k(k as u64).with_variant(Variant::Strong);
        out.push(tag(MarginReport::less("strong_goal", lhs, rhs)
            .term("small_sum", st.small_sum)
            .term("tail", st.tail)
            .term("lambda", lam)
            .term("lambda_prev", lam_prime)
            .term("theta", theta)
            .term("nu", nu)
            .claim("sum_{p<=p_k} p^(-nu lambda) + lambda/(lambda-1/k-theta) p_{k+1}^(-nu(lambda-1/k-theta)) < lambda' theta p_{k+1}^(1-lambda') (1 - 1/log p_{k+1})")));
        out.push(tag(MarginReport::less("strong_nu_lambda", 3.0 * log_k, nu * lam)
            .claim("nu lambda > 3 log k")));
        out.push(tag(MarginReport::less("strong_small_sum", st.small_sum, 2.0 * inv_k2)
            .claim("sum_{p<=p_k} p^(-nu lambda) < 2/k^2")));
        out.push(tag(MarginReport::less("strong_gap", 3.0 * log_k - 2.0, nu * st.gap)
            .claim("nu (lambda - 1/k - theta) > 3 log k - 2")));
        out.push(tag(MarginReport::less("strong_ratio", st.ratio, 1.23)
            .claim("lambda/(lambda - 1/k - theta) < 1.23")));
        out.push(tag(MarginReport::less("strong_tail", 1.23 * pk1.powf(-(3.0 * log_k - 2.0)), inv_k2)
            .claim("1.23 p_{k+1}^(-(3 log k - 2)) < 1/k^2")));
        out.push(tag(MarginReport::less("strong_lhs_total", lhs, 3.0 * inv_k2)
            .claim("left side < 3/k^2")));
        out.push(tag(MarginReport::less("strong_lambda_theta", 2.0 * log_k * inv_k2, lam_prime * theta)
            .claim("lambda' theta > 2 log k / k^2")));
        out.push(tag(MarginReport::less("strong_prime_power", pk1.powf(lam_prime), 4.4)
            .claim("p_{k+1}^lambda' < 4.4")));
        out.push(tag(MarginReport::less("strong_log_factor", 0.79, 1.0 - 1.0 / pk1.ln())
            .claim("1 - 1/log p_{k+1} > 0.79")));
        out.push(tag(MarginReport::less("strong_rhs_lower", 0.36 * pk1 * log_k * inv_k2, rhs)
            .claim("right side > 0.36 p_{k+1} log k / k^2")));
        out.push(tag(MarginReport::less("strong_prime_growth", kf * log_k, pk)
            .term("p_k_plus_1", pk1)
            .claim("p_{k+1} > p_k > k log k")));
        out.push(tag(MarginReport::less("strong_closing", 3.0 * inv_k2, 0.36 * log_k * log_k / kf)
            .claim("3/k^2 < 0.36 log^2 k / k")));
        let log_km1 = (kf - 1.0).ln();
        out.push(tag(MarginReport::less("strong_nu_exceeds_k", kf, nu)
            .term("k_log_ratio", kf * log_km1 / (log_km1 - 1.0))
            .claim("nu = 1/theta > k")));
    }
    Ok(out)
}

/// `I_lam(x) = sum_{a in A, a <= x} a^-lam - sum_{b in B, b <= x} b^-lam`
/// at every point of `A` and `B`.
fn prefix_differences(a: &[f64], b: &[f64], lam: f64) -> Vec<(f64, f64)> {
    let mut points: Vec<(f64, f64)> = a
        .iter()
        .map(|&v| (v, v.powf(-lam)))
        .chain(b.iter().map(|&v| (v, -v.powf(-lam))))
        .collect();
    points.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    let mut acc = 0.0;
    for (x, w) in points {
        acc += w;
        match out.last_mut() {
            Some(last) if last.0 == x => last.1 = acc,
            _ => out.push((x, acc)),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneCounterexample {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub lam: f64,
    pub lam_prime: f64,
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneSummary {
    pub seed: u64,
    pub trials: usize,
    /// Trials where `I_lam(x) >= 0` held at every x.
    pub hypothesis_held: usize,
    pub larger_exponents_checked: usize,
    pub counterexamples: Vec<MonotoneCounterexample>,
}

impl MonotoneSummary {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

const LARGER_PER_TRIAL: usize = 3;

/// Random finite `A, B` in `(1, 200]` and `lam` in `(0, 2)`: whenever
/// `I_lam(x) >= 0` for all x, checks `I_lam'(x) >= 0` for a few `lam' > lam`.
/// `A` is drawn as a perturbation of `B` so that the hypothesis holds often.
/// A value below `-1e-12` times the size of the sums counts as a counterexample.
pub fn monotone_exponent_property(trials: usize, seed: u64) -> MonotoneSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = MonotoneSummary {
        seed,
        trials,
        hypothesis_held: 0,
        larger_exponents_checked: 0,
        counterexamples: Vec::new(),
    };
    let draw = |rng: &mut ChaCha8Rng| 1.0 + 199.0 * (1.0 - rng.gen::<f64>());
    for _ in 0..trials {
        let b: Vec<f64> = (0..rng.gen_range(1..=12)).map(|_| draw(&mut rng)).collect();
        let mut a: Vec<f64> = Vec::new();
        for &v in &b {
            match rng.gen_range(0..10) {
                0 => {}
                1 => a.push(draw(&mut rng)),
                2..=5 => a.push(v),
                _ => a.push(1.0 + (v - 1.0) * (1.0 - rng.gen::<f64>())),
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            a.push(draw(&mut rng));
        }
        let lam = 2.0 * (1.0 - rng.gen::<f64>()) * 0.999_999;
        if prefix_differences(&a, &b, lam).iter().any(|&(_, v)| v < 0.0) {
            continue;
        }
        summary.hypothesis_held += 1;
        for _ in 0..LARGER_PER_TRIAL {
            let lam_prime = lam + 2.0 * rng.gen::<f64>();
            summary.larger_exponents_checked += 1;
            let scale: f64 = a.iter().chain(&b).map(|v| v.powf(-lam_prime)).sum();
            if let Some(&(x, value)) = prefix_differences(&a, &b, lam_prime)
                .iter()
                .find(|&&(_, v)| v < -1e-12 * scale)
            {
                summary.counterexamples.push(MonotoneCounterexample {
                    a: a.clone(),
                    b: b.clone(),
                    lam,
                    lam_prime,
                    x,
                    value,
                });
            }
        }
    }
    summary
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YSmallSummary {
    pub max_n: u64,
    pub k: usize,
    pub sets_checked: usize,
    pub violations: Vec<YSmallReport>,
}

impl YSmallSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the small-support checks on every lcm k-primitive subset `A` of
/// `[2, max_n]` with `|P(A)| <= k`. Sets are enumerated once per exact
/// prime support, growing in increasing order and keeping only primitive
/// extensions.
pub fn ysmall_exhaustive(max_n: u64, k: usize, lams: &[f64]) -> Result<YSmallSummary> {
    if max_n > 200 {
        return Err(Error::Resource {
            what: "exhaustive bound",
            requested: max_n,
            cap: 200,
        });
    }
    let numbers: Vec<FactoredInt> = (2..=max_n).map(factor).collect::<Result<_>>()?;
    let primes: Vec<u64> = numbers.iter().filter(|f| f.is_prime()).map(|f| f.n()).collect();
    let mut summary = YSmallSummary {
        max_n,
        k,
        sets_checked: 0,
        violations: Vec::new(),
    };
    let mut supports: Vec<Vec<u64>> = Vec::new();
    subsets_up_to(&primes, k, 0, &mut Vec::new(), &mut supports);
    for support in supports {
        let cands: Vec<FactoredInt> = numbers
            .iter()
            .filter(|f| f.primes().all(|p| support.contains(&p)))
            .cloned()
            .collect();
        let wanted: BTreeSet<u64> = support.iter().copied().collect();
        let mut current = Vec::new();
        enumerate_primitive(&cands, 0, k, &mut current, &mut |set| {
            let cs = CandidateSet::from_factored(set.to_vec());
            if cs.support() != &wanted {
                return Ok(());
            }
            summary.sets_checked += 1;
            let report = check_ysmall(&cs, k, lams)?;
            if !report.passed() {
                summary.violations.push(report);
            }
            Ok(())
        })?;
    }
    Ok(summary)
}

fn subsets_up_to(items: &[u64], max: usize, start: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    if cur.len() == max {
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        subsets_up_to(items, max, i + 1, cur, out);
        cur.pop();
    }
}

fn enumerate_primitive<F>(cands: &[FactoredInt], start: usize, k: usize, cur: &mut Vec<FactoredInt>, visit: &mut F) -> Result<()>
where
    F: FnMut(&[FactoredInt]) -> Result<()>,
{
    if !cur.is_empty() {
        visit(cur)?;
    }
    for i in start..cands.len() {
        if violation_with(cur, &cands[i], k, Variant::Lcm).is_none() {
            cur.push(cands[i].clone());
            enumerate_primitive(cands, i + 1, k, cur, visit)?;
            cur.pop();
        }
    }
    Ok(())
}

/// Evaluates `f` on every k in `[k_from, k_to]` using up to `jobs` threads
/// and concatenates the results in increasing k, so the output does not
/// depend on `jobs`.
pub fn fan_out<F>(k_from: usize, k_to: usize, jobs: usize, f: F) -> Result<Vec<MarginReport>>
where
    F: Fn(usize, usize) -> Result<Vec<MarginReport>> + Sync,
{
    if k_from > k_to {
        return Ok(Vec::new());
    }
    let jobs = jobs.max(1).min(k_to - k_from + 1);
    if jobs == 1 {
        return f(k_from, k_to);
    }
    let span = k_to - k_from + 1;
    let chunk = span.div_ceil(jobs);
    let ranges: Vec<(usize, usize)> = (0..jobs)
        .map(|i| (k_from + i * chunk, (k_from + (i + 1) * chunk - 1).min(k_to)))
        .filter(|(a, b)| a <= b)
        .collect();
    let results: Vec<Result<Vec<MarginReport>>> = std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = ranges.iter().map(|&(a, b)| scope.spawn(move || f(a, b))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Internal("worker panicked".into()))))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    fn table() -> PrimeTable {
        PrimeTable::sieve(200_000).unwrap()
    }

    #[test]
    fn s_of_y_values() {
        let t = table();
        assert_eq!(s_of_y(&t, 1000.0, 0.6, 0.6).unwrap(), 0.0);
        assert_eq!(s_of_y(&t, 1.5, 0.6, 0.8).unwrap(), 0.0);
        assert!((s_of_y(&t, 5.0, 0.7, 0.8).unwrap() - (-0.01728998889)).abs() < 1e-10);
        assert!((s_of_y(&t, 23.0, 0.7, 0.8).unwrap() - (-0.16967465589)).abs() < 1e-10);
        assert!(s_of_y(&t, 10.0, 0.9, 0.8).is_err());
    }

    #[test]
    fn s_of_y_two_ways() {
        let t = table();
        for &(y, l, lp) in &[(5.0, 0.7, 0.8), (1223.0, 0.35, 0.36), (50_000.0, 0.2, 0.21), (97.0, 1.0, 8.0 / 7.0)] {
            let a = s_of_y(&t, y, l, lp).unwrap();
            let b = s_of_y_via_power_sums(&t, y, l, lp).unwrap();
            let scale = t.prime_power_sum(y, l).unwrap();
            assert!((a - b).abs() <= 1e-12 * scale, "y={y}: {a} vs {b}");
        }
    }

    #[test]
    fn claim1_examples() {
        let t = table();
        let r = claim1_check(&t, 3, 50, Variant::Main).unwrap();
        assert_eq!(r.len(), 48);
        assert!((r[0].lhs - 5f64.powf(-0.7)).abs() < 1e-12);
        assert!(all_pass(&r) && r.iter().all(|m| m.passed()));
        let r = claim1_check(&t, 4, 4, Variant::Lcm).unwrap();
        assert_eq!(r.len(), 1);
        assert!(claim1_check(&t, 40, 41, Variant::Strong).is_err());
    }

    #[test]
    fn claim2_examples() {
        let t = table();
        let r = claim2_check(&t, Variant::Main, 3, 3).unwrap();
        assert!(r[0].passed() && (r[0].lhs + 0.01728998889).abs() < 1e-10);
        let r = claim2_check(&t, Variant::Main, 200, 200).unwrap();
        assert_eq!(r[0].check, "claim2_margin");
        assert!((r[0].rhs + 0.015 / 1223f64.ln()).abs() < 1e-15);
        assert!(r[0].passed());
        let r = claim2_check(&t, Variant::Lcm, 2, 2).unwrap();
        assert!(r[0].passed());
        assert_eq!(r[0].terms["lambda"], 3.0 * 0.5 * (2.0 / 3.0));
    }

    #[test]
    fn smooth_tail_examples() {
        let t = table();
        let main = ExponentSchedule::new(Variant::Main, &t);
        let st = smooth_tail(3, &main).unwrap();
        assert_eq!(st.base_prime, 23);
        let expected = 0.7 / (0.7 - 1.0 / 3.0 - 0.125) * 23f64.powf(-8.0 * (0.7 - 1.0 / 3.0 - 0.125));
        assert!((st.tail - expected).abs() < 1e-15);
        assert!((st.tail - 0.0068).abs() < 1e-4);
        let strong = ExponentSchedule::new(Variant::Strong, &t);
        let st = smooth_tail(39, &strong).unwrap();
        assert!(st.small_sum > 0.0 && st.nu * st.lambda > 3.0 * 39f64.ln());
        // 1.2 - 1 - 1/2 < 0
        assert!(matches!(smooth_tail(1, &main), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn i_bound_examples() {
        let t = table();
        let r = i_bound_check(&t, Variant::Main, 3, 3).unwrap();
        assert!(r[0].passed());
        assert!((r[0].terms["s"] + 0.16967465589).abs() < 1e-10);
        let r = i_bound_check(&t, Variant::Lcm, 2, 2).unwrap();
        assert!(r[0].passed());
        assert_eq!(r[0].terms["nu"], 8.0);
        let small = PrimeTable::sieve(1000).unwrap();
        match i_bound_check(&small, Variant::Main, 50, 50) {
            Err(Error::OutOfRange { required_limit, .. }) => assert!(required_limit > 1000),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn asymptotic_examples() {
        let t = table();
        for v in [Variant::Main, Variant::Lcm] {
            let r = asymptotic_leg_check(&t, v, 200, 200).unwrap();
            assert_eq!(r.len(), 4);
            assert!(all_pass(&r));
        }
        assert!(1.05 * (-1.4f64 * 5.0).exp() < 0.015 / 5f64.ln());
        assert!(asymptotic_leg_check(&t, Variant::Main, 199, 200).is_err());
    }

    #[test]
    fn strong_goal_examples() {
        let t = table();
        let r = strong_goal_check(&t, 39, 39).unwrap();
        let goal = &r[0];
        assert!((goal.terms["lambda"] - 0.2818).abs() < 1e-4);
        assert!(all_pass(&r), "{:?}", r.iter().filter(|m| m.failed()).collect::<Vec<_>>());
        let nu = r.iter().find(|m| m.check == "strong_nu_exceeds_k").unwrap();
        // the sharper intermediate bound k log(k-1)/(log(k-1)-1) does not hold at k = 39
        assert!(nu.rhs < nu.terms["k_log_ratio"]);
        let far = strong_goal_check(&t, 1000, 1000).unwrap();
        assert!(far[0].margin / far[0].rhs > goal.margin / goal.rhs);
        assert!(strong_goal_check(&t, 38, 40).is_err());
    }

    #[test]
    fn monotone_property_small_run() {
        let s = monotone_exponent_property(500, 1);
        assert!(s.passed());
        assert!(s.hypothesis_held > 50);
        assert_eq!(s, monotone_exponent_property(500, 1));
        let d = prefix_differences(&[4.0], &[2.0], 1.0);
        assert_eq!(d, vec![(2.0, -0.5), (4.0, -0.25)]);
        let same = prefix_differences(&[3.0, 7.0], &[3.0, 7.0], 0.4);
        assert!(same.iter().all(|&(_, v)| v == 0.0));
    }

    #[test]
    fn ysmall_small_bound() {
        let s = ysmall_exhaustive(20, 2, &[0.0, 0.5, 1.0]).unwrap();
        assert!(s.passed());
        assert!(s.sets_checked > 20);
    }

    #[test]
    fn fan_out_is_order_stable() {
        let t = table();
        let one = fan_out(3, 60, 1, |a, b| claim2_check(&t, Variant::Main, a, b)).unwrap();
        let many = fan_out(3, 60, 7, |a, b| claim2_check(&t, Variant::Main, a, b)).unwrap();
        assert_eq!(one, many);
        assert_eq!(one.len(), 58);
    }
}
