mod common;

use common::{is_prime, naive_max_weighted};
use kprimitive::search::{max_weighted_sum, DEFAULT_BUDGET};
use kprimitive::Variant;

#[test]
fn branch_and_bound_matches_exhaustive_enumeration() {
    for n in [2u64, 5, 9, 12, 16, 20] {
        for k in 1..=3 {
            for notion in Variant::ALL {
                for lam in [0.0, 0.5, 0.8, 1.2] {
                    let r = max_weighted_sum(n, lam, k, notion, DEFAULT_BUDGET).unwrap();
                    assert!(r.optimal);
                    let naive = naive_max_weighted(n, lam, k, notion);
                    assert!(
                        (r.best_value - naive).abs() <= 1e-12 * naive.max(1.0),
                        "N={n} k={k} {notion} lam={lam}: {} vs {naive}",
                        r.best_value
                    );
                    let recomputed: f64 = r.best_set.iter().map(|&m| (m as f64).powf(-lam)).sum();
                    assert!((recomputed - r.best_value).abs() < 1e-12 * naive.max(1.0));
                    assert!(!common::naive_violates(&r.best_set, k, notion));
                }
            }
        }
    }
}

#[test]
fn prime_value_is_the_prime_sum() {
    let r = max_weighted_sum(30, 0.9, 2, Variant::Lcm, DEFAULT_BUDGET).unwrap();
    let direct: f64 = (2..=30u64).filter(|&m| is_prime(m)).map(|m| (m as f64).powf(-0.9)).sum();
    assert!((r.prime_value - direct).abs() < 1e-14);
}

#[test]
fn finite_critical_exponent_grows_with_n() {
    let mut prev = 0.0;
    for n in [6u64, 10, 14, 18, 22] {
        let b = kprimitive::search::bracket_tau(n, 1, Variant::Main, 1e-3).unwrap();
        assert!(b.hi + 1e-3 >= prev, "N={n}: {b:?} after {prev}");
        prev = b.lo;
    }
}
