//! I_f · T on a set avoiding nontrivial solutions is diagonal. Over F_5
//! the diagonal is nonzero; over F_3 the rank-1 generator's diagonal value
//! S(3, 2) = 3 vanishes and the report says so.

use prlab::ffield::{Field, FieldVector};
use prlab::indicators::{distinctness_generator, rank_generator};
use prlab::partition::PartitionLattice;
use prlab::tensors::{verify_diagonalization, PropertyKind, PropertySpec, DEFAULT_TUPLE_BUDGET};

fn show(label: &str, r: &prlab::tensors::DiagonalizationReport) {
    let conds: Vec<String> = r.conditions.iter().map(|c| format!("({}) {}", c.id, if c.holds { "ok" } else { "FAILS" })).collect();
    println!(
        "{label}: |A| = {}, diagonal value {}, off-diagonal nonzero {}, {} -> conclusion {}",
        r.set_size,
        r.diagonal_value,
        r.off_diagonal_nonzero,
        conds.join(" "),
        r.conclusion_holds
    );
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = PartitionLattice::new(3)?;

    let f5 = Field::prime(5)?;
    let spec = PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 3] }, 3, f5.clone(), 1)?;
    let set = vec![FieldVector::from_ints(&f5, &[0]), FieldVector::from_ints(&f5, &[1])];
    let r = verify_diagonalization(&rank_generator(&lat, 1, f5.clone())?, &spec, &set, DEFAULT_TUPLE_BUDGET)?;
    show("F_5, x + y + 3z", &r);
    assert!(r.conclusion_holds);

    let f3 = Field::prime(3)?;
    let cap = PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1] }, 3, f3.clone(), 2)?;
    let set: Vec<FieldVector> = [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|v| FieldVector::from_ints(&f3, v)).collect();
    let r = verify_diagonalization(&distinctness_generator(&lat, f3.clone()), &cap, &set, DEFAULT_TUPLE_BUDGET)?;
    show("F_3^2 cap set", &r);

    let line = PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1] }, 3, f3.clone(), 1)?;
    let set = vec![FieldVector::from_ints(&f3, &[0]), FieldVector::from_ints(&f3, &[1])];
    let r = verify_diagonalization(&rank_generator(&lat, 1, f3)?, &line, &set, DEFAULT_TUPLE_BUDGET)?;
    show("F_3, rank-1 generator", &r);
    assert!(!r.conditions[3].holds);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
