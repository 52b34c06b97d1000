//! Search results placed under the closed-form upper bounds.

use prlab::ffield::Field;
use prlab::search::{default_bounds, max_avoiding_set, sandwich_report, SearchConfig, SearchMode};
use prlab::tensors::{PropertyKind, PropertySpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f3 = Field::prime(3)?;
    let f5 = Field::prime(5)?;
    let specs = [
        PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1] }, 3, f3.clone(), 3)?,
        PropertySpec::new(PropertyKind::AcuteAngle, 3, f3.clone(), 2)?,
        PropertySpec::new(PropertyKind::ObtuseAngle, 3, f5.clone(), 2)?,
        PropertySpec::new(PropertyKind::KRightCorner, 3, f3.clone(), 2)?,
        PropertySpec::new(PropertyKind::PairwiseOrthogonal, 3, f3, 2)?,
    ];
    for spec in specs {
        let config = SearchConfig::new(spec, SearchMode::Exact);
        let report = sandwich_report(max_avoiding_set(&config)?, &default_bounds(&config)?);
        let bounds: Vec<String> = report
            .bounds
            .iter()
            .map(|b| format!("{} <= {}", b.bound, b.approx.map(|a| format!("{a:.2}")).unwrap_or_else(|| b.value.clone())))
            .collect();
        println!(
            "{:<24} {}^{}: max {} ({:?}); {}; consistent: {}",
            report.search.property,
            report.search.field,
            report.search.n,
            report.search.size,
            report.search.proof_status,
            if bounds.is_empty() { "no bound".to_string() } else { bounds.join(", ") },
            report.consistent
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
