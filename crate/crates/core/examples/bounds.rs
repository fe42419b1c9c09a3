//! Counting bounds from explicit profiles and from the family case analysis.

use goodpoly::chebotarev::{
    baseline_tamo_barg, genus_bound, main_term, split_count_bounds, split_count_bounds_int,
    theorem_bound, threshold_c, TheoremProfile,
};
use goodpoly::goodpoly::Family;
use goodpoly::{Elem, Field};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quartic = TheoremProfile::new(8, 0, 4);
    let (lo, hi) = split_count_bounds(151, &quartic)?;
    let (lo_i, hi_i) = split_count_bounds_int(151, &quartic)?;
    println!("q = 151, profile {quartic:?}: [{lo:.3}, {hi:.3}] -> [{lo_i}, {hi_i}]");
    println!("threshold C: {}", threshold_c(&quartic)?);
    println!("genus bound for degree 6, #G = 12: {}", genus_bound(6, 12));
    println!("main term for q = 1787, r = 4: {}", main_term(1787, 4));
    println!(
        "C(151, 4)/151^3 rounded up: {}",
        baseline_tamo_barg(151, 3)?
    );

    let e = Elem::from_code_unchecked;
    for q in [125u64, 127, 131, 149, 151] {
        let field = Field::of_order(q)?;
        let rep = theorem_bound(
            &field,
            &Family::Quartic {
                a: field.from_int(7),
            },
        )?;
        println!(
            "x^4+7x^2 over F_{q}: {} lower {:?} upper {:?}",
            rep.case, rep.lower, rep.upper
        );
    }
    for q in [101u64, 103, 107] {
        let field = Field::prime(q)?;
        let rep = theorem_bound(&field, &Family::Cubic { b: e(3) })?;
        println!("x(x-1)(x-3) over F_{q}: {} lower {:?}", rep.case, rep.lower);
    }
    Ok(())
}
