//! Totally split values of x^3 over F_13 and of x^4 + 7x^2 over F_151.

use goodpoly::goodpoly::{is_totally_split_at, splitting_covering, verify_covering};
use goodpoly::io::CoveringFile;
use goodpoly::{Field, Poly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f13 = Field::prime(13)?;
    let cube = Poly::parse(&f13, "x^3")?;
    let covering = splitting_covering(&cube)?;
    println!(
        "{cube} over F_13: r = {}, ell = {}, cap = {}",
        covering.r(),
        covering.ell(),
        covering.cap()
    );
    for set in covering.sets() {
        let points: Vec<u32> = set.points.iter().map(|x| x.code()).collect();
        println!("  f = {:>2} on {points:?}", set.t);
    }
    assert!(verify_covering(&covering));
    println!(
        "{}",
        serde_json::to_string(&CoveringFile::from_covering(&covering))?
    );

    let f151 = Field::prime(151)?;
    let quartic = Poly::parse(&f151, "x^4+7*x^2")?;
    let covering = splitting_covering(&quartic)?;
    println!("{quartic} over F_151: ell = {}", covering.ell());
    // the gcd test agrees with the scan on every value
    let mut split = 0;
    for t in f151.elements() {
        if is_totally_split_at(&quartic, t)? {
            split += 1;
        }
    }
    println!("values passing the X^q mod (f - t) test: {split}");
    Ok(())
}
