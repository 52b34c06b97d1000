//! I_f - T against the scalar multiple of the all-equal indicator, on the
//! largest acute-free sets. On F_3^2 the acute tensor is 0 on some
//! distinct non-acute triples, so the decomposition fails; the report
//! shows where.

use prlab::ffield::Field;
use prlab::indicators::distinctness_generator;
use prlab::partition::PartitionLattice;
use prlab::search::{max_avoiding_set, SearchConfig, SearchMode};
use prlab::tensors::{verify_decomposition, PropertyKind, PropertySpec, DEFAULT_TUPLE_BUDGET};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = PartitionLattice::new(3)?;
    for (p, n) in [(3, 2), (5, 1), (5, 2)] {
        let field = Field::prime(p)?;
        let spec = PropertySpec::new(PropertyKind::AcuteAngle, 3, field.clone(), n)?;
        let found = max_avoiding_set(&SearchConfig::new(spec.clone(), SearchMode::Exact))?;
        let set = found.vectors(&field);
        let f = distinctness_generator(&lat, field.clone()).with_top(field.zero());
        let r = verify_decomposition(&f, &spec, &set, DEFAULT_TUPLE_BUDGET)?;
        println!(
            "F_{p}^{n}: acute-free set of size {}, scalar {}, decomposition holds: {} ({} mismatches)",
            set.len(),
            r.scalar,
            r.decomposition_holds,
            r.mismatches
        );
        if let Some(w) = r.witnesses.first() {
            println!("    {} gives {} instead of {}", serde_json::to_string(&w.tuple)?, w.value, w.expected);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
