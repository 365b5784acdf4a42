mod common;

use common::naive_violates;
use kprimitive::primitivity::{check_primitive, CandidateSet, PrimitivityOptions};
use kprimitive::Variant;
use proptest::prelude::*;

fn exact(set: &[u64], k: usize, notion: Variant) -> kprimitive::primitivity::Outcome {
    let cs = CandidateSet::new(set.iter().copied()).unwrap();
    check_primitive(&cs, k, notion, &PrimitivityOptions::default()).unwrap()
}

fn small_set() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::btree_set(2u64..=60, 1..=7).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn matches_bruteforce(set in small_set(), k in 1usize..=3) {
        for notion in Variant::ALL {
            let out = exact(&set, k, notion);
            prop_assert_eq!(out.primitive, !naive_violates(&set, k, notion), "{:?} k={} {}", set, k, notion);
            if let Some(w) = out.witness {
                prop_assert!(w.is_valid(notion));
                prop_assert!(w.factors.len() <= k);
            }
        }
    }

    #[test]
    fn strong_implies_main_implies_lcm(set in small_set(), k in 1usize..=4) {
        let strong = exact(&set, k, Variant::Strong).primitive;
        let main = exact(&set, k, Variant::Main).primitive;
        let lcm = exact(&set, k, Variant::Lcm).primitive;
        prop_assert!(!strong || main);
        prop_assert!(!main || lcm);
    }

    #[test]
    fn downward_in_k_and_closed_under_subsets(set in small_set(), k in 2usize..=4, drop in 0usize..7) {
        for notion in Variant::ALL {
            if exact(&set, k, notion).primitive {
                prop_assert!(exact(&set, k - 1, notion).primitive);
                let mut smaller = set.clone();
                smaller.remove(drop % set.len());
                if !smaller.is_empty() {
                    prop_assert!(exact(&smaller, k, notion).primitive);
                }
            }
        }
    }

    #[test]
    fn single_j_only_relaxes(set in small_set(), k in 1usize..=3) {
        let opts = PrimitivityOptions { single_j: true, ..Default::default() };
        for notion in Variant::ALL {
            let cs = CandidateSet::new(set.iter().copied()).unwrap();
            let cumulative = check_primitive(&cs, k, notion, &PrimitivityOptions::default()).unwrap();
            let single = check_primitive(&cs, k, notion, &opts).unwrap();
            prop_assert!(!cumulative.primitive || single.primitive);
            if set.len() > k {
                prop_assert_eq!(cumulative.primitive, single.primitive);
            }
        }
    }
}

#[test]
fn primes_and_prime_powers_of_distinct_primes() {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    let powers = [8u64, 9, 25, 49, 121];
    for k in 1..=6 {
        for notion in Variant::ALL {
            assert!(exact(&primes, k, notion).primitive);
            assert!(exact(&powers, k, notion).primitive);
        }
    }
}
