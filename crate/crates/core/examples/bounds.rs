//! Closed-form bounds with their cross-checks and discrepancy flags.

use prlab::bounds::{
    bound_linear_equation, bound_obtuse, gamma_exponent_identifier, identifier_exponent_discrepancies,
    partition_rank_upper_bound_polynomial, BoundReport,
};

fn show(r: &BoundReport) {
    let approx = r.approx.map(|a| format!(" ~ {a:.4}")).unwrap_or_default();
    println!("{}: {}{approx}  [{}]", r.name, r.value, r.formula);
    for c in &r.cross_checks {
        println!("    {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.description, c.detail);
    }
    for f in &r.flags {
        println!("    flag {}: {}", f.code, f.message);
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    show(&bound_obtuse(2, 3)?);
    show(&bound_obtuse(10, 5)?);
    show(&bound_linear_equation(2, 3, 3, 3)?);
    show(&bound_linear_equation(4, 5, 4, 3)?);
    show(&gamma_exponent_identifier(4, 2, 2, 7)?);
    for r in identifier_exponent_discrepancies(4, 5)? {
        show(&r);
    }
    show(&partition_rank_upper_bound_polynomial(1, 3, 2, 2, 3)?);
    show(&partition_rank_upper_bound_polynomial(5, 3, 2, 1, 2)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
