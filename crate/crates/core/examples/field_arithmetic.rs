//! Arithmetic in F_8 and F_151 through the canonical integer encoding.

use goodpoly::gf::{ArithOp, Field, FieldElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f8 = Field::new(2, 3)?;
    println!("F_8 modulus: {}", f8.modulus_text());
    let x = f8.elem(2)?;
    let x2 = f8.elem(4)?;
    // x · x^2 = x^3 = x + 1
    println!("2 * 4 = {}", f8.mul(x, x2));
    println!("2^-1 = {}", f8.inv(x)?);
    println!("generator = {}", f8.generator());

    let f151 = Field::prime(151)?;
    let a = FieldElement::new(&f151, 72)?;
    let (square, root) = a.is_square();
    println!(
        "72 in F_151: square = {square}, root = {:?}",
        root.map(|r| r.code())
    );
    let b = FieldElement::new(&f151, 10)?;
    let q = a.arith(ArithOp::Div, Some(&b))?;
    println!("72 / 10 = {}", q.code());

    let f9 = Field::new(3, 2)?;
    let table: Vec<Vec<u32>> = f9
        .elements()
        .map(|u| f9.elements().map(|v| f9.mul(u, v).code()).collect())
        .collect();
    println!("F_9 (mod {}) multiplication table:", f9.modulus_text());
    for row in table {
        println!("  {row:?}");
    }
    Ok(())
}
