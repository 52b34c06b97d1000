use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use prlab::bounds::{
    bound_obtuse, c_constant, exact_bounded_monomial_count, gamma, gamma_exponent_identifier, markov_bound,
    markov_dominates, verify_poset_lemma,
};
use prlab::combinatorics::stirling2;
use prlab::ffield::Field;

fn brute_count(n: u64, p: u64, d: u64) -> u64 {
    let mut count = 0;
    for code in 0..p.pow(n as u32) {
        let mut c = code;
        let mut s = 0;
        for _ in 0..n {
            s += c % p;
            c /= p;
        }
        if s <= d {
            count += 1;
        }
    }
    count
}

fn phi(p: u64, m: u64, x: f64) -> f64 {
    let s: f64 = (0..p).map(|j| x.powi(j as i32)).sum();
    s / x.powf((p - 1) as f64 / m as f64)
}

fn choose(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[test]
fn monomial_count_matches_enumeration() {
    for n in 1..=5 {
        for p in [2, 3, 5] {
            for d in 0..=n * (p - 1) + 1 {
                assert_eq!(exact_bounded_monomial_count(n, p, d), BigInt::from(brute_count(n, p, d)));
            }
        }
    }
}

#[test]
fn markov_grid() {
    for n in 1..=6u64 {
        for p in [3, 5, 7] {
            for m in 2..=4 {
                for i in 1..20 {
                    let x = BigRational::new(i.into(), 20.into());
                    let (holds, count) = markov_dominates(n, p, m, &x).unwrap();
                    assert!(holds, "n={n} p={p} m={m} x={x}");
                    let v = markov_bound(n, p, m, &x).unwrap();
                    assert!(count.to_f64().unwrap() <= v.upper_f64());
                }
            }
        }
    }
}

#[test]
fn gamma_against_grid_minimum() {
    for p in [3u64, 5, 7, 11] {
        let mut prev = f64::INFINITY;
        for m in 3..=7 {
            let g = gamma(p, m, 1e-10).unwrap();
            let grid = (1..100_000).map(|i| phi(p, m, i as f64 / 100_000.0)).fold(f64::INFINITY, f64::min);
            assert!((g.value - grid).abs() < 1e-6, "p={p} m={m}: {} vs {grid}", g.value);
            assert!(g.upper_f64() >= g.value - 1e-12);
            assert!(g.value >= 1.0 && g.value < p as f64);
            assert!(g.value <= prev + 1e-12);
            prev = g.value;
            let xs = g.x_certified.to_f64().unwrap();
            assert!(phi(p, m, xs) <= g.upper_f64() + 1e-12);
        }
    }
    assert!(gamma(3, 2, 1e-10).is_err());
    assert!(gamma(3, 3, 1e-10).unwrap().value < 3.0);
    assert!((gamma(3, 3, 1e-12).unwrap().value - 2.7551).abs() < 1e-4);
}

#[test]
fn obtuse_bound_is_binomial_plus_four() {
    for q in [3u64, 5, 7, 9, 11] {
        for n in 1..=6 {
            let r = bound_obtuse(n, q).unwrap();
            assert_eq!(r.integer_value().unwrap(), BigInt::from(choose(n + q + 1, q - 1) + 4));
            assert!(r.all_passed());
        }
    }
}

#[test]
fn identifier_exponent_specialises() {
    for k in 2..=8 {
        for q in [3, 5, 7] {
            let r = gamma_exponent_identifier(k, 2, 2, q).unwrap();
            assert_eq!(r.integer_value().unwrap(), BigInt::from((k + 1) * (q - 1)));
            assert!(r.all_passed());
        }
    }
}

#[test]
fn c_constant_by_definition() {
    for r in 1..=7u64 {
        for m in 1..=5u64 {
            let mut expected = BigRational::from_integer(0.into());
            for l in 1..=m.min(r) {
                expected += BigRational::new(BigInt::from(choose(r - 1, l - 1)), BigInt::from(l)) * stirling2(m as usize, l as usize);
            }
            assert_eq!(c_constant(r, m), expected, "r={r} m={m}");
        }
    }
    assert_eq!(c_constant(1, 3), BigRational::one());
}

#[test]
fn poset_lemma_agrees_with_stirling() {
    for k in 3..=6 {
        for r in 0..=k - 2 {
            let rep = verify_poset_lemma(k, r, None).unwrap();
            assert!(rep.all_passed(), "{rep:?}");
            assert_eq!(rep.integer_value(), Some(stirling2(k, k - r)));
            for p in [3, 5, 7] {
                assert!(verify_poset_lemma(k, r, Some(&Field::prime(p).unwrap())).unwrap().all_passed());
            }
        }
        assert!(verify_poset_lemma(k, k - 1, None).is_err());
    }
}

proptest! {
    #[test]
    fn gamma_between_one_and_p(p in prop::sample::select(vec![3u64, 5, 7, 13, 31]), m in 3u64..12) {
        let g = gamma(p, m, 1e-9).unwrap();
        prop_assert!(g.value >= 1.0 - 1e-12);
        prop_assert!(g.value < p as f64);
        prop_assert!(g.upper_f64() >= g.value - 1e-12);
    }

    #[test]
    fn markov_holds_for_random_x(n in 1u64..8, p in prop::sample::select(vec![3u64, 5, 7]), m in 1u64..5, a in 1i64..1000) {
        let x = BigRational::new(a.into(), 1000.into());
        prop_assert!(markov_dominates(n, p, m, &x).unwrap().0);
    }
}
