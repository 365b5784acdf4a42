//! Brute-force reference implementations shared by the integration tests.
//! Everything here works on plain integers, never on factorizations.

#![allow(dead_code)]

use kprimitive::Variant;
use rand::Rng;

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// All index combinations of size `j` from `0..n`, with or without repetition.
fn combos(n: usize, j: usize, repeat: bool) -> Vec<Vec<usize>> {
    fn go(n: usize, j: usize, start: usize, repeat: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, j, if repeat { i } else { i + 1 }, repeat, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, j, 0, repeat, &mut Vec::new(), &mut out);
    out
}

/// True when some member divides a product (or lcm) of at most `k` others.
/// Members must be at most 10^6 and `k <= 3` so products fit in u128.
pub fn naive_violates(set: &[u64], k: usize, notion: Variant) -> bool {
    assert!(k <= 3 && set.iter().all(|&n| n <= 1_000_000));
    for (i, &a) in set.iter().enumerate() {
        let others: Vec<u128> = set
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &m)| m as u128)
            .collect();
        for j in 1..=k {
            for c in combos(others.len(), j, notion == Variant::Strong) {
                let combined = match notion {
                    Variant::Lcm => c.iter().fold(1u128, |acc, &x| lcm(acc, others[x])),
                    _ => c.iter().map(|&x| others[x]).product(),
                };
                if combined % a as u128 == 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Exhaustive maximum of `sum n^-lam` over admissible subsets of `[2, n]`.
/// Admissibility is closed under taking subsets, so only admissible sets are
/// extended.
pub fn naive_max_weighted(n: u64, lam: f64, k: usize, notion: Variant) -> f64 {
    fn go(n: u64, next: u64, lam: f64, k: usize, notion: Variant, cur: &mut Vec<u64>, value: f64, best: &mut f64) {
        if value > *best {
            *best = value;
        }
        for m in next..=n {
            cur.push(m);
            if !naive_violates(cur, k, notion) {
                go(n, m + 1, lam, k, notion, cur, value + (m as f64).powf(-lam), best);
            }
            cur.pop();
        }
    }
    let mut best = 0.0;
    go(n, 2, lam, k, notion, &mut Vec::new(), 0.0, &mut best);
    best
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Random set of distinct integers in `[2, max]` with `1..=max_size` members.
pub fn random_set<R: Rng>(rng: &mut R, max: u64, max_size: usize) -> Vec<u64> {
    let size = rng.gen_range(1..=max_size);
    let mut v: Vec<u64> = Vec::new();
    while v.len() < size {
        let x = rng.gen_range(2..=max);
        if !v.contains(&x) {
            v.push(x);
        }
    }
    v.sort_unstable();
    v
}
