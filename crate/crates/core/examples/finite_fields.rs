//! Arithmetic in F_9 and F_5^2: inverses, quadratic residues, inner
//! products and the JSON forms of elements and vectors.

use prlab::ffield::{Field, FieldVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f9 = Field::with_order(9)?;
    println!("{f9}: modulus {:?}", f9.spec().modulus);
    for x in f9.elements().skip(1).take(4) {
        let inv = f9.inv(x)?;
        println!("  {} * {} = {}", f9.format(x), f9.format(inv), f9.format(f9.mul(x, inv)));
    }
    let res: Vec<String> = f9.quadratic_residues().into_iter().map(|x| f9.format(x)).collect();
    println!("  residues: {}", res.join(", "));
    println!("  element JSON: {}", f9.element_to_json(f9.element(5)));

    let f5 = Field::prime(5)?;
    let u = FieldVector::from_ints(&f5, &[1, 2]);
    let v = FieldVector::from_ints(&f5, &[3, -1]);
    println!("<{}, {}> = {} in F_5", f5.vector_to_json(&u), f5.vector_to_json(&v), f5.format(f5.inner_product(&u, &v)?));
    println!("F_5^2 has {} vectors", f5.vector_count(2, 1_000)?);
    assert!(Field::with_order(6).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
