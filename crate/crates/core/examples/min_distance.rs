//! Exhaustive minimum distance against n - k - ⌈k/r⌉ + 2 for small codes,
//! and a sampled upper bound for one too large to enumerate.

use goodpoly::goodpoly::splitting_covering;
use goodpoly::lrc::DISTANCE_GUARD;
use goodpoly::{Field, LrcCode, Poly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (13u64, "x^3", 1usize),
        (13, "x^3", 2),
        (4, "x^2+x", 1),
        (9, "x^4", 1),
        (16, "x^5", 1),
    ];
    for (q, poly, t) in cases {
        let field = Field::of_order(q)?;
        let g = Poly::parse(&field, poly)?;
        let code = LrcCode::build(splitting_covering(&g)?, t)?;
        let d = code.min_distance_bruteforce(DISTANCE_GUARD)?;
        println!(
            "F_{q} {poly} t={t}: (n, k, r) = ({}, {}, {}), d = {d}, optimal = {}",
            code.n(),
            code.k(),
            code.r(),
            code.target_distance()
        );
    }

    let f151 = Field::prime(151)?;
    let g = Poly::parse(&f151, "x^4+7*x^2")?;
    let code = LrcCode::build(splitting_covering(&g)?.truncated(17), 17)?;
    println!(
        "F_151 x^4+7x^2: (n, k, r) = ({}, {}, {}), optimal d = {}, sampled d <= {}",
        code.n(),
        code.k(),
        code.r(),
        code.target_distance(),
        code.min_distance_sampled(2000, 1)
    );
    Ok(())
}
