//! The lattice of set partitions of {1..4}: elements by rank, a few Möbius
//! values, and the product formula checked against the table.

use prlab::partition::{mobius_closed_form, PartitionLattice, SetPartition};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = PartitionLattice::new(4)?;
    println!("|Pi_4| = {}", lat.len());
    for rank in 0..4 {
        let names: Vec<String> = lat.rank_range(rank).map(|i| lat.partition(i).to_string()).collect();
        println!("rank {rank}: {}", names.join("  "));
    }

    let bottom = lat.partition(lat.bottom());
    let top = lat.partition(lat.top());
    println!("mu({bottom}, {top}) = {}", lat.mobius_at(lat.bottom(), lat.top()));

    let pi = SetPartition::parse("12|3|4", 4)?;
    let sigma = SetPartition::parse("12|34", 4)?;
    println!("mu({pi}, {sigma}) = {}", lat.mobius_recursive(&pi, &sigma)?);
    println!("meet(12|34, 13|24) = {}", sigma.meet(&SetPartition::parse("13|24", 4)?)?);

    let mut pairs = 0;
    for a in 0..lat.len() {
        for b in 0..lat.len() {
            if lat.leq(a, b) {
                assert_eq!(mobius_closed_form(lat.partition(a), lat.partition(b))?, lat.mobius_at(a, b));
                pairs += 1;
            }
        }
    }
    println!("closed form agrees on {pairs} comparable pairs");
    assert!(lat.zeta_mobius_defects().is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
