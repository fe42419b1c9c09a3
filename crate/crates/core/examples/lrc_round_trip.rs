//! Builds the (12, 4, 2) code from x^3 over F_13, encodes, erases one symbol
//! per block and repairs it locally.

use goodpoly::goodpoly::splitting_covering;
use goodpoly::io::{format_symbols, format_word, CodeFile};
use goodpoly::{Elem, Field, LrcCode, Poly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f13 = Field::prime(13)?;
    let g = Poly::parse(&f13, "x^3")?;
    let code = LrcCode::build(splitting_covering(&g)?, 2)?;
    println!(
        "n = {}, k = {}, r = {}, target d = {}",
        code.n(),
        code.k(),
        code.r(),
        code.target_distance()
    );
    println!("points: {}", format_symbols(code.eval_points()));

    let message: Vec<Elem> = [3, 1, 4, 1]
        .into_iter()
        .map(Elem::from_code_unchecked)
        .collect();
    let word = code.encode(&message)?;
    println!("codeword: {}", format_symbols(&word));

    let mut damaged: Vec<Option<Elem>> = word.iter().copied().map(Some).collect();
    for block in 0..code.ell() {
        damaged[code.block_positions(block).start + block % (code.r() + 1)] = None;
    }
    println!("erased:   {}", format_word(&damaged));
    let repaired = code.repair(&damaged)?;
    println!("repaired: {}", format_symbols(&repaired));
    assert_eq!(repaired, word);

    let file = CodeFile::from_code(&code);
    println!(
        "code file has {} bytes of JSON",
        serde_json::to_string(&file)?.len()
    );
    Ok(())
}
