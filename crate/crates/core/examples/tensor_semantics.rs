//! Compares each property's tensor with its predicate on all tuples of a
//! small space, and checks the squared-distance identifier.

use prlab::ffield::Field;
use prlab::tensors::{check_identifier, verify_tensor_semantics, Mode, PropertyKind, PropertySpec, DEFAULT_TUPLE_BUDGET};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f3 = Field::prime(3)?;
    let f5 = Field::prime(5)?;
    let cases = [
        PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1] }, 3, f3.clone(), 2)?,
        PropertySpec::new(PropertyKind::KRightCorner, 3, f3.clone(), 1)?,
        PropertySpec::new(PropertyKind::RightAngleTriple, 3, f5.clone(), 1)?,
        PropertySpec::new(PropertyKind::AcuteAngle, 3, f3.clone(), 2)?,
        PropertySpec::new(PropertyKind::ObtuseAngle, 3, f5.clone(), 1)?,
        PropertySpec::new(PropertyKind::PairwiseOrthogonal, 3, f3.clone(), 2)?,
    ];
    for spec in &cases {
        let r = verify_tensor_semantics(spec, Mode::Exhaustive, DEFAULT_TUPLE_BUDGET)?;
        println!(
            "{:<26} {}^{} checked {:>4}, violations {:>3}, nonzero on repeated entries {:>3}",
            r.property, r.field, r.n, r.checked, r.violations, r.degenerate_support
        );
        if let Some(w) = r.witnesses.first() {
            println!("    e.g. {} -> {} (expected {}): {}", serde_json::to_string(&w.tuple)?, w.value, w.expected, w.note);
        }
    }

    let spec = PropertySpec::new(PropertyKind::RightKConfiguration, 3, f3, 2)?;
    let r = check_identifier(&spec, Mode::Sampled { samples: 5_000, seed: 1 }, DEFAULT_TUPLE_BUDGET)?;
    println!("squared-distance identifier holds on samples: {}", r.holds);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
