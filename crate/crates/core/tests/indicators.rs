use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use prlab::combinatorics::{signed_factorial, stirling2};
use prlab::ffield::Field;
use prlab::indicators::{
    diagonal_value, distinctness_generator, indicator_coefficients, indicator_value_lemma, rank_generator,
    zero_set_generator, Domain, PartitionFunction,
};
use prlab::partition::PartitionLattice;
use prlab::scalars::{Rationals, Scalars};

fn function<S: Scalars>(lat: &PartitionLattice, s: S, values: &[i64]) -> PartitionFunction<S> {
    let mut f = PartitionFunction::zero(lat, s.clone(), Domain::ExcludesTop);
    for idx in 0..lat.top() {
        f.set(idx, s.from_bigint(&BigInt::from(values[idx % values.len()]))).unwrap();
    }
    f
}

fn lemma_holds<S: Scalars>(k: usize, s: S, values: &[i64], word: &[u8]) -> bool {
    let lat = PartitionLattice::new(k).unwrap();
    let f = function(&lat, s, values);
    let c = indicator_coefficients(&f, &lat).unwrap();
    c.evaluate(word).unwrap() == indicator_value_lemma(&f, &lat, word).unwrap()
}

proptest! {
    #[test]
    fn indicator_matches_lemma(
        k in 2usize..=5,
        values in prop::collection::vec(-9i64..=9, 1..60),
        word in prop::collection::vec(0u8..5, 5),
        p in prop::sample::select(vec![0u64, 3, 5, 7]),
    ) {
        let word: Vec<u8> = word.into_iter().take(k).map(|x| x % k as u8).collect();
        let ok = if p == 0 {
            lemma_holds(k, Rationals, &values, &word)
        } else {
            lemma_holds(k, Field::prime(p).unwrap(), &values, &word)
        };
        prop_assert!(ok);
    }

    #[test]
    fn zero_set_generator_cancels_non_minimal_coefficients(k in 3usize..=5, mask in any::<u64>(), seed in 1i64..5) {
        let lat = PartitionLattice::new(k).unwrap();
        let support: Vec<_> = (0..lat.top()).filter(|i| mask >> (i % 64) & 1 == 1).map(|i| *lat.partition(i)).collect();
        prop_assume!(!support.is_empty());
        let idx: Vec<usize> = support.iter().map(|p| lat.index_of(p).unwrap()).collect();
        let minima: Vec<usize> = idx.iter().copied().filter(|&i| !idx.iter().any(|&j| j != i && lat.leq(j, i))).collect();
        let given: Vec<_> = minima.iter().map(|&i| (*lat.partition(i), BigRational::from_integer(seed.into()))).collect();
        let f = zero_set_generator(&lat, &support, &given, Rationals).unwrap();
        let c = indicator_coefficients(&f, &lat).unwrap();
        for &i in &idx {
            if !minima.contains(&i) {
                prop_assert_eq!(c.get(lat.partition(i)).cloned().unwrap_or_default(), BigRational::from_integer(0.into()));
            }
        }
        for i in 0..lat.top() {
            if !idx.contains(&i) {
                prop_assert_eq!(f.value_at(i).clone(), BigRational::from_integer(0.into()));
            }
        }
    }
}

#[test]
fn lemma_exhaustive_over_three_letters() {
    for k in 2..=5 {
        for p in [0u64, 3, 5, 7] {
            for code in 0..3usize.pow(k as u32) {
                let word: Vec<u8> = (0..k).map(|i| (code / 3usize.pow(i as u32) % 3) as u8).collect();
                let values = [3, -1, 4, 1, -5, 9, 2, -6];
                let ok = if p == 0 {
                    lemma_holds(k, Rationals, &values, &word)
                } else {
                    lemma_holds(k, Field::prime(p).unwrap(), &values, &word)
                };
                assert!(ok, "k = {k}, p = {p}, word {word:?}");
            }
        }
    }
}

#[test]
fn distinctness_indicator_values() {
    for k in 2..=6 {
        let lat = PartitionLattice::new(k).unwrap();
        let c = indicator_coefficients(&distinctness_generator(&lat, Rationals), &lat).unwrap();
        let distinct: Vec<usize> = (0..k).collect();
        let mut partial = distinct.clone();
        partial[0] = partial[1];
        let constant = vec![7usize; k];
        let q = |v: BigInt| BigRational::from_integer(v);
        assert_eq!(c.evaluate(&distinct).unwrap(), q(1.into()));
        if k > 2 {
            assert_eq!(c.evaluate(&partial).unwrap(), q(0.into()));
        }
        assert_eq!(c.evaluate(&constant).unwrap(), q(-signed_factorial(k)));
    }
}

#[test]
fn rank_generator_diagonal_is_stirling() {
    for k in 3..=7 {
        let lat = PartitionLattice::new(k).unwrap();
        for r in 0..=k - 2 {
            let d = diagonal_value(&rank_generator(&lat, r, Rationals).unwrap(), &lat).unwrap();
            assert_eq!(d, BigRational::from_integer(stirling2(k, k - r)));
            for p in [3, 5, 7] {
                let f = Field::prime(p).unwrap();
                let d = diagonal_value(&rank_generator(&lat, r, f.clone()).unwrap(), &lat).unwrap();
                assert_eq!(d, f.from_bigint(&stirling2(k, k - r)));
            }
        }
        assert!(rank_generator(&lat, k - 1, Rationals).is_err());
    }
}

#[test]
fn partition_function_json() {
    let lat = PartitionLattice::new(3).unwrap();
    let json = serde_json::json!({"1|2|3": 1, "12|3": -2});
    let f = PartitionFunction::from_json(&lat, Rationals, Domain::ExcludesTop, &json).unwrap();
    let back = PartitionFunction::from_json(&lat, Rationals, Domain::ExcludesTop, &f.to_json(&lat)).unwrap();
    assert_eq!(f, back);
    let top = serde_json::json!({"123": 1});
    assert!(PartitionFunction::from_json(&lat, Rationals, Domain::ExcludesTop, &top).is_err());
}
