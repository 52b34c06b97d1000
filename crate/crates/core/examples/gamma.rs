//! The constant Γ_{p,m} and the Markov bound it comes from, compared with
//! exact counts of bounded-degree monomials.

use num_rational::BigRational;
use prlab::bounds::{exact_bounded_monomial_count, gamma, markov_bound};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for p in [3, 5, 7, 11] {
        let row: Vec<String> = (3..=6)
            .map(|m| gamma(p, m, 1e-12).map(|g| format!("{:.5}", g.upper_f64())))
            .collect::<Result<_, _>>()?;
        println!("p = {p:>2}: Gamma for m = 3..6: {}", row.join("  "));
    }

    let g = gamma(3, 3, 1e-12)?;
    println!("Gamma_3,3 in [{:.6}, {}] at x = {:.6}", g.value, g.upper, g.x_star);

    for n in 1..=6 {
        let d = n * 2 / 3;
        let exact = exact_bounded_monomial_count(n, 3, d);
        let markov = markov_bound(n, 3, 3, &g.x_certified)?;
        println!("n = {n}: {exact} monomials of degree <= {d}, Markov bound {:.3}", markov.upper_f64());
    }
    let half = BigRational::new(1.into(), 2.into());
    println!("at x = 1/2 the n = 2 bound is {:?}", markov_bound(2, 3, 3, &half)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
