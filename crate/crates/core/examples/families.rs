//! Every constructor family, with its measured ℓ and the promised or bounded one.

use goodpoly::goodpoly::{construct_family, good_params, Family};
use goodpoly::{Elem, Field};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (Field::prime(151)?, Family::Monomial { m: 3 }),
        (
            Field::new(2, 6)?,
            Family::Additive {
                generators: vec![Elem::from_code_unchecked(1), Elem::from_code_unchecked(2)],
            },
        ),
        (
            Field::new(2, 9)?,
            Family::Cubic {
                b: Elem::from_code_unchecked(5),
            },
        ),
        (
            Field::prime(151)?,
            Family::Quartic {
                a: Elem::from_code_unchecked(7),
            },
        ),
        (
            Field::prime(263)?,
            Family::Sextic {
                a: Elem::from_code_unchecked(7),
            },
        ),
        (
            Field::prime(1787)?,
            Family::FromRoots {
                roots: (0..5).map(Elem::from_code_unchecked).collect(),
            },
        ),
    ];
    for (field, family) in cases {
        let g = construct_family(&field, family.clone())?;
        let report = good_params(&g.poly, Some(&family))?;
        let bounds = report.bounds.as_ref().expect("family given");
        println!(
            "{:<10} q={:<5} {:<28} r={} ell={:<4} lower={:?} upper={:?} promised={:?} case={}",
            family.tag(),
            field.order(),
            g.poly.to_string(),
            report.r,
            report.ell_measured,
            report.bound_lower,
            report.bound_upper,
            g.promised_ell,
            bounds.case,
        );
    }
    Ok(())
}
