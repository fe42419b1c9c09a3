//! Randomized invariants across fields, polynomials, coverings and codes.

use goodpoly::goodpoly::{is_totally_split_at, splitting_covering, verify_covering};
use goodpoly::io::{format_word, parse_word, CoveringFile};
use goodpoly::lrc::lagrange_at;
use goodpoly::{Elem, Field, FieldRef, LrcCode, Poly};
use proptest::prelude::*;

const ORDERS: [u64; 16] = [2, 3, 4, 5, 7, 8, 9, 13, 16, 25, 27, 32, 49, 64, 81, 125];

fn field() -> impl Strategy<Value = FieldRef> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| Field::of_order(q).unwrap())
}

fn elems(
    field: &FieldRef,
    len: impl Into<prop::collection::SizeRange>,
) -> impl Strategy<Value = Vec<Elem>> {
    let q = field.order();
    prop::collection::vec((0..q).prop_map(Elem::from_code_unchecked), len)
}

fn field_and_elems(len: usize) -> impl Strategy<Value = (FieldRef, Vec<Elem>)> {
    field().prop_flat_map(move |f| {
        let v = elems(&f, len);
        (Just(f), v)
    })
}

fn field_and_polys() -> impl Strategy<Value = (FieldRef, Poly, Poly)> {
    field().prop_flat_map(|f| {
        let a = elems(&f, 0..9);
        let b = elems(&f, 1..6);
        (Just(f), a, b).prop_map(|(f, a, b)| {
            let pa = Poly::new(&f, a);
            let pb = Poly::new(&f, b);
            (f, pa, pb)
        })
    })
}

/// Code from one of a few good polynomials; t is reduced modulo ℓ.
fn code() -> impl Strategy<Value = LrcCode> {
    let cases = vec![
        (13u64, "x^3"),
        (16, "x^5"),
        (9, "x^4"),
        (151, "x^4+7*x^2"),
        (64, "x^4+x^2+x"),
        (37, "x^6"),
    ];
    (prop::sample::select(cases), 1usize..20).prop_map(|((q, g), t)| {
        let f = Field::of_order(q).unwrap();
        let cov = splitting_covering(&Poly::parse(&f, g).unwrap()).unwrap();
        let ell = cov.ell();
        LrcCode::build(cov, 1 + (t - 1) % ell).unwrap()
    })
}

fn code_and_message() -> impl Strategy<Value = (LrcCode, Vec<Elem>, Vec<Elem>)> {
    code().prop_flat_map(|c| {
        let k = c.k();
        let a = elems(c.field(), k);
        let b = elems(c.field(), k);
        (Just(c), a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
        prop_assert_eq!(f.pow_u64(a, f.order() as u64), a);
    }

    #[test]
    fn square_roots_square_back((f, v) in field_and_elems(1)) {
        let a = v[0];
        let (is_sq, root) = f.is_square(a);
        prop_assert_eq!(is_sq, root.is_some());
        if let Some(r) = root {
            prop_assert_eq!(f.square(r), a);
        } else {
            prop_assert!(f.elements().all(|x| f.square(x) != a));
        }
    }

    #[test]
    fn division_with_remainder((_f, a, b) in field_and_polys()) {
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.div_rem(&b);
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn text_form_round_trips((f, a, _b) in field_and_polys()) {
        prop_assert_eq!(Poly::parse(&f, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn scan_agrees_with_the_gcd_test((f, v) in field_and_elems(5)) {
        let mut coeffs = v;
        coeffs.push(Elem::ONE);
        let poly = Poly::new(&f, coeffs);
        let covering = splitting_covering(&poly).unwrap();
        prop_assert!(verify_covering(&covering));
        prop_assert!(covering.ell() as u64 <= covering.cap());
        let by_scan = covering.split_values();
        let by_gcd: Vec<Elem> = f.elements().filter(|&t| is_totally_split_at(&poly, t).unwrap()).collect();
        prop_assert_eq!(by_scan, by_gcd);
    }

    #[test]
    fn covering_file_round_trips((f, v) in field_and_elems(3)) {
        let mut coeffs = v;
        coeffs.push(Elem::ONE);
        let covering = splitting_covering(&Poly::new(&f, coeffs)).unwrap();
        let json = serde_json::to_string(&CoveringFile::from_covering(&covering)).unwrap();
        let back: CoveringFile = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_covering(1 << 20).unwrap(), covering);
    }

    #[test]
    fn encoding_is_linear((code, a, b) in code_and_message(), scale in 0u32..1000) {
        let f = code.field().clone();
        let lambda = Elem::from_code_unchecked(scale % f.order());
        let sum: Vec<Elem> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect();
        let scaled: Vec<Elem> = a.iter().map(|&x| f.mul(lambda, x)).collect();
        let ca = code.encode(&a).unwrap();
        let cb = code.encode(&b).unwrap();
        let expected: Vec<Elem> = ca.iter().zip(&cb).map(|(&x, &y)| f.add(x, y)).collect();
        prop_assert_eq!(code.encode(&sum).unwrap(), expected);
        let expected: Vec<Elem> = ca.iter().map(|&x| f.mul(lambda, x)).collect();
        prop_assert_eq!(code.encode(&scaled).unwrap(), expected);
    }

    #[test]
    fn blocks_are_low_degree((code, a, _b) in code_and_message(), drop in 0usize..64) {
        let f = code.field();
        let word = code.encode(&a).unwrap();
        for block in 0..code.ell() {
            let range = code.block_positions(block);
            let missing = range.start + drop % range.len();
            let known: Vec<(Elem, Elem)> = range
                .filter(|&p| p != missing)
                .map(|p| (code.eval_points()[p], word[p]))
                .collect();
            prop_assert_eq!(lagrange_at(f, &known, code.eval_points()[missing]), word[missing]);
        }
    }

    #[test]
    fn repair_recovers_any_single_erasure((code, a, _b) in code_and_message(), pos in 0usize..1000) {
        let word = code.encode(&a).unwrap();
        let pos = pos % code.n();
        let mut damaged: Vec<Option<Elem>> = word.iter().copied().map(Some).collect();
        damaged[pos] = None;
        let text = format_word(&damaged);
        let parsed = parse_word(code.field(), &text).unwrap();
        prop_assert_eq!(code.local_repair(&parsed, pos).unwrap(), word[pos]);
    }
}
