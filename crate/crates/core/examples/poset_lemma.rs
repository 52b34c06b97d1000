//! The diagonal value of the rank generator computed through its defining
//! recursion, with the matrix series identity on the Möbius table.

use prlab::bounds::{poset_series_identity, verify_poset_lemma};
use prlab::ffield::Field;
use prlab::partition::PartitionLattice;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for k in 3..=6 {
        let values: Vec<String> = (0..=k - 2)
            .map(|r| verify_poset_lemma(k, r, None).map(|rep| rep.value))
            .collect::<Result<_, _>>()?;
        println!("k = {k}: diagonal values for r = 0..{}: {}", k - 2, values.join(", "));
    }
    let f3 = Field::prime(3)?;
    let rep = verify_poset_lemma(5, 1, Some(&f3))?;
    println!("k = 5, r = 1 reduced in F_3: {} (all checks pass: {})", rep.value, rep.all_passed());

    let lat = PartitionLattice::new(5)?;
    let (powers, bad) = poset_series_identity(&lat);
    println!("series on Pi_5 stops after {powers} powers with {} mismatches", bad.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
