//! Exact branch-and-bound for cap sets in F_3^n, checked against the
//! all-subsets oracle and against a different point order, plus a seeded
//! random-restart lower bound in F_3^4.

use prlab::ffield::Field;
use prlab::search::{max_avoiding_set, naive_max_avoiding, PointOrder, SearchConfig, SearchMode};
use prlab::tensors::{PropertyKind, PropertySpec};

fn cap(n: usize) -> Result<PropertySpec, prlab::Error> {
    PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1] }, 3, Field::prime(3)?, n)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=3 {
        let config = SearchConfig::new(cap(n)?, SearchMode::Exact);
        let r = max_avoiding_set(&config)?;
        let mut other = config.clone();
        other.order = PointOrder::Index;
        other.symmetry_reduction = false;
        let again = max_avoiding_set(&other)?;
        let (naive, _) = naive_max_avoiding(&config.property, config.avoidance())?;
        println!(
            "F_3^{n}: {} ({:?}, {} nodes); index order {}; all subsets {naive}",
            r.size, r.proof_status, r.nodes_explored, again.size
        );
        println!("    {}", serde_json::to_string(&r.best_set)?);
    }

    let mut config = SearchConfig::new(cap(4)?, SearchMode::RandomRestart);
    config.seed = 2024;
    config.restarts = 64;
    let r = max_avoiding_set(&config)?;
    println!("F_3^4 random restarts (seed {}): size {} ({:?})", r.seed, r.size, r.proof_status);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
