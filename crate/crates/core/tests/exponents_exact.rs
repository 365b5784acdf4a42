use kprimitive::{schedule, PrimeTable, Variant};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn float_products_agree_with_exact_rationals() {
    let table = PrimeTable::sieve(5_000).unwrap();
    let main = schedule(Variant::Main, &table);
    let lcm = schedule(Variant::Lcm, &table);
    let mut prod = BigRational::one();
    for k in 1..=300usize {
        let p = table.nth_prime(k).unwrap() as i64;
        prod *= ratio(p - 1, p);
        let exact = prod.to_f64().unwrap();
        let m = main.mertens_product(k).unwrap();
        assert!((m - exact).abs() <= 1e-13 * exact, "k={k}");
        if k >= 3 {
            let lam = (ratio(21, 8) * &prod).to_f64().unwrap();
            assert!((main.lambda(k).unwrap() - lam).abs() <= 1e-13 * lam);
        }
        if k >= 2 {
            let mu = (ratio(3, 1) * &prod).to_f64().unwrap();
            assert!((lcm.lambda(k).unwrap() - mu).abs() <= 1e-13 * mu);
        }
    }
}

#[test]
fn scaled_theta_products_are_exact_identities() {
    // lambda_k = 2.4 prod_{j<=k} (1 - theta_j) and mu_k = (16/7) prod_{j<=k} (1 - theta_j)
    let table = PrimeTable::sieve(2_000).unwrap();
    let (mut main_prod, mut lcm_prod) = (BigRational::one(), BigRational::one());
    let mut mertens = BigRational::one();
    for k in 1..=200usize {
        let p = table.nth_prime(k).unwrap() as i64;
        mertens *= ratio(p - 1, p);
        main_prod *= if k == 3 { ratio(7, 8) } else { ratio(p - 1, p) };
        lcm_prod *= if k == 2 { ratio(7, 8) } else { ratio(p - 1, p) };
        let main_exact = match k {
            1 => ratio(6, 5),
            2 => ratio(4, 5),
            _ => ratio(21, 8) * &mertens,
        };
        assert_eq!(ratio(12, 5) * &main_prod, main_exact, "main k={k}");
        let lcm_exact = if k == 1 { ratio(8, 7) } else { ratio(3, 1) * &mertens };
        assert_eq!(ratio(16, 7) * &lcm_prod, lcm_exact, "lcm k={k}");
    }
}
