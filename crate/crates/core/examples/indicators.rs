//! Partition indicators: coefficients of the distinctness indicator and
//! the diagonal values of the rank generators, over Q and over F_5.

use prlab::combinatorics::stirling2;
use prlab::ffield::Field;
use prlab::indicators::{
    diagonal_value, distinctness_generator, indicator_coefficients, naslund_sum_check, rank_generator,
};
use prlab::partition::PartitionLattice;
use prlab::scalars::Rationals;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = PartitionLattice::new(3)?;
    let f = distinctness_generator(&lat, Rationals);
    let c = indicator_coefficients(&f, &lat)?;
    println!("distinctness indicator on 3 points: {}", c.to_json());
    println!("  (a, b, c) -> {}", c.evaluate(&['a', 'b', 'c'])?);
    println!("  (a, a, b) -> {}", c.evaluate(&['a', 'a', 'b'])?);
    println!("  (a, a, a) -> {}", c.evaluate(&['a', 'a', 'a'])?);

    let f5 = Field::prime(5)?;
    for k in 3..=6 {
        let lat = PartitionLattice::new(k)?;
        for r in 0..=k - 2 {
            let q = diagonal_value(&rank_generator(&lat, r, Rationals)?, &lat)?;
            let p = diagonal_value(&rank_generator(&lat, r, f5.clone())?, &lat)?;
            println!("k={k} r={r}: diagonal {q} (S(k, k-r) = {}), in F_5: {}", stirling2(k, k - r), f5.format(p));
        }
    }

    // r = k - 1 would put all the weight on the top partition
    assert!(rank_generator(&lat, 2, Rationals).is_err());

    for p in [3, 5, 7] {
        let n = naslund_sum_check(p)?;
        println!("sum-free generator on Pi_{p}: full sum {} in F_{p}", n.full_sum);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
