//! Property and oracle tests for the exact arithmetic layer.

use hsc_core::exact::{d_composite, divisors, factorize, sum_reciprocals, Rational};
use proptest::prelude::*;

#[test]
fn factorization_reconstructs_every_n_up_to_a_million() {
    for n in 1..=1_000_000u64 {
        assert_eq!(factorize(n).unwrap().value(), n, "n={n}");
    }
}

/// Counts distinct prime factors without going through `Factorization`.
fn distinct_primes_direct(mut n: u64) -> u32 {
    let mut count = 0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

#[test]
fn d_composite_matches_the_divisor_filter_oracle() {
    for z in 1..=100_000u64 {
        let filtered: Vec<u64> = divisors(z)
            .unwrap()
            .into_iter()
            .filter(|&d| distinct_primes_direct(d) >= 2)
            .collect();
        let oracle = sum_reciprocals(&filtered).unwrap();
        assert_eq!(d_composite(z).unwrap(), oracle, "z={z}");
    }
}

#[test]
fn d_grows_when_a_prime_is_attached() {
    // strictness requires the larger argument to have two distinct primes;
    // for powers of a single prime both sides are zero
    for z in 1..=2000u64 {
        for p in [2u64, 3, 5, 7] {
            let lhs = d_composite(z).unwrap();
            let rhs = d_composite(p * z).unwrap();
            if factorize(p * z).unwrap().distinct_primes() >= 2 {
                assert!(lhs < rhs, "d({z}) < d({}) fails", p * z);
            } else {
                assert_eq!(lhs, Rational::ZERO);
                assert_eq!(rhs, Rational::ZERO);
            }
        }
    }
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(
        a in arb_rational(),
        b in arb_rational(),
        c in arb_rational(),
    ) {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!((a + b) + c, a + (b + c));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in arb_rational(),
        b in arb_rational(),
        c in arb_rational(),
    ) {
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b) * c, a * (b * c));
    }

    #[test]
    fn results_stay_reduced(a in arb_rational(), b in arb_rational()) {
        for v in [a + b, a - b, a * b] {
            let g = hsc_core::exact::gcd(v.numerator().unsigned_abs(), v.denominator() as u64);
            prop_assert!(v.denominator() > 0);
            prop_assert!(g == 1 || v.numerator() == 0);
        }
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_rational(), b in arb_rational()) {
        prop_assert_eq!((a + b) - b, a);
    }
}
