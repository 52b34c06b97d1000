use proptest::prelude::*;

use prlab::ffield::{Field, FieldVector};
use prlab::indicators::{indicator_coefficients, Domain, PartitionFunction};
use prlab::partition::{PartitionLattice, SetPartition};
use prlab::tensors::{
    check_avoids, verify_tensor_semantics, AvoidCheck, Avoidance, Mode, PropertyKind, PropertySpec, TensorClaim,
    DEFAULT_TUPLE_BUDGET,
};

fn spec(kind: PropertyKind, k: usize, q: u64, n: usize) -> PropertySpec {
    PropertySpec::new(kind, k, Field::with_order(q).unwrap(), n).unwrap()
}

fn indicator_kinds() -> Vec<(PropertyKind, usize)> {
    vec![
        (PropertyKind::PairwiseOrthogonal, 3),
        (PropertyKind::RightKConfiguration, 3),
        (PropertyKind::EqualSquaredDistances, 3),
        (PropertyKind::KRightCorner, 3),
        (PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1] }, 3),
        (PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 3] }, 3),
    ]
}

fn random_tuple(f: &Field, n: usize, k: usize, seeds: &[u64]) -> Vec<FieldVector> {
    let points = f.q().pow(n as u32);
    (0..k).map(|i| f.vector_from_index(seeds[i % seeds.len()] % points, n)).collect()
}

fn pattern(f: &Field, tuple: &[FieldVector]) -> Vec<u64> {
    tuple.iter().map(|v| f.vector_index(v)).collect()
}

#[test]
fn indicator_kinds_compute_their_predicate() {
    for q in [3u64, 5] {
        for (kind, k) in indicator_kinds() {
            if let PropertyKind::BalancedLinearEquation { coefficients } = &kind {
                if coefficients.iter().sum::<i64>() % q as i64 != 0 {
                    continue;
                }
            }
            let s = spec(kind.clone(), k, q, 2);
            assert_eq!(s.claim(), TensorClaim::Indicator);
            let r = verify_tensor_semantics(&s, Mode::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
            assert_eq!(r.non_boolean, 0, "{} over F_{q}", kind.name());
            if matches!(kind, PropertyKind::KRightCorner) {
                // The corner tensor also fires on some tuples with repeated entries.
                assert!(r.degenerate_support > 0);
                assert!(r.degenerate_witness.is_some());
            } else if matches!(kind, PropertyKind::EqualSquaredDistances) {
                // Its identifier compares |x1 - x2|^2 with |x1 - x3|^2 only.
                assert!(!r.passed);
                assert!(r.violations > 0);
            } else {
                assert!(r.passed, "{} over F_{q}: {r:?}", kind.name());
                assert_eq!(r.violations, 0);
            }
        }
    }
}

#[test]
fn pattern_table_kinds_vanish_on_repeats() {
    for kind in [PropertyKind::RightAngleTriple, PropertyKind::AcuteAngle, PropertyKind::ObtuseAngle] {
        let s = spec(kind.clone(), 3, 3, 2);
        let f = s.field().clone();
        for i in 0..9 {
            for j in 0..9 {
                let x = f.vector_from_index(i, 2);
                let y = f.vector_from_index(j, 2);
                for t in [[x.clone(), x.clone(), y.clone()], [x.clone(), y.clone(), x.clone()], [y.clone(), x.clone(), x.clone()]] {
                    assert_eq!(s.tensor_value(&t).unwrap(), f.zero(), "{} on {t:?}", kind.name());
                }
            }
        }
    }
}

#[test]
fn full_check_matches_brute_force() {
    let s = spec(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1] }, 3, 3, 2);
    let f = s.field().clone();
    for mask in 0u32..512 {
        let set: Vec<FieldVector> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| f.vector_from_index(i, 2)).collect();
        let mut found = false;
        for a in &set {
            for b in &set {
                for c in &set {
                    let t = [a.clone(), b.clone(), c.clone()];
                    let distinct = [a != b, b != c, a != c].iter().filter(|&&d| d).count();
                    if distinct >= 1 && s.holds(&t).unwrap() {
                        found = true;
                    }
                }
            }
        }
        let check = check_avoids(&set, &s, Avoidance::NonTrivial { max_distinct: 3 }, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(check.passed(), !found, "mask {mask:b}");
        if let AvoidCheck::Fail(t) = check {
            assert!(s.holds(&t).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn tensor_times_indicator_is_pattern_value(
        seeds in prop::collection::vec(any::<u64>(), 3),
        values in prop::collection::vec(0u64..5, 5),
        which in 0usize..4,
        q in prop::sample::select(vec![3u64, 5]),
    ) {
        let (kind, k) = indicator_kinds()[which].clone();
        let s = spec(kind, k, q, 2);
        let f = s.field().clone();
        let lat = PartitionLattice::new(k).unwrap();
        let mut g = PartitionFunction::zero(&lat, f.clone(), Domain::ExcludesTop);
        for i in 0..lat.top() {
            g.set(i, f.from_i64(values[i % values.len()] as i64)).unwrap();
        }
        let c = indicator_coefficients(&g, &lat).unwrap();
        let tuple = random_tuple(&f, 2, k, &seeds);
        let word = pattern(&f, &tuple);
        let rho = SetPartition::of_tuple(&word).unwrap();
        prop_assume!(rho.num_blocks() > 1);
        let t = s.tensor_value(&tuple).unwrap();
        let lhs = f.mul(c.evaluate(&word).unwrap(), t);
        let rhs = f.mul(g.get(&lat, &rho).unwrap(), t);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetric_kinds_ignore_argument_order(
        seeds in prop::collection::vec(any::<u64>(), 3),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        which in 0usize..3,
        q in prop::sample::select(vec![3u64, 5, 7]),
    ) {
        let kinds = [
            PropertyKind::PairwiseOrthogonal,
            PropertyKind::EqualSquaredDistances,
            PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1] },
        ];
        let kind = kinds[which].clone();
        if let PropertyKind::BalancedLinearEquation { .. } = kind {
            prop_assume!(q == 3);
        }
        let s = spec(kind, 3, q, 2);
        let tuple = random_tuple(s.field(), 2, 3, &seeds);
        let permuted: Vec<FieldVector> = perm.iter().map(|&i| tuple[i].clone()).collect();
        if which != 1 {
            prop_assert_eq!(s.tensor_value(&tuple).unwrap(), s.tensor_value(&permuted).unwrap());
        }
        prop_assert_eq!(s.holds(&tuple).unwrap(), s.holds(&permuted).unwrap());
    }

    #[test]
    fn indicator_tensor_is_boolean(
        seeds in prop::collection::vec(any::<u64>(), 4),
        which in 0usize..4,
        q in prop::sample::select(vec![3u64, 5, 7, 9]),
        n in 1usize..=3,
    ) {
        let (kind, k) = indicator_kinds()[which].clone();
        let s = spec(kind, k, q, n);
        let tuple = random_tuple(s.field(), n, s.k(), &seeds);
        let t = s.tensor_value(&tuple).unwrap();
        prop_assert!(t == s.field().zero() || t == s.field().one());
    }
}
