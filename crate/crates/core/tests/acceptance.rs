//! Exit criteria. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any fails. Time limits are checked on the wall clock of each criterion.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use goodpoly::chebotarev::{baseline_tamo_barg, theorem_bound};
use goodpoly::gf::{is_prime, prime_power, DEFAULT_GUARD};
use goodpoly::goodpoly::{
    construct_additive, construct_family, construct_monomial, is_totally_split_at,
    splitting_covering, Family, SplittingCovering,
};
use goodpoly::lrc::{optimal_distance, DISTANCE_GUARD};
use goodpoly::tables::compute_table;
use goodpoly::{Elem, Field, FieldRef, LrcCode, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coverings checked against `ℓ ≤ ⌊q/(r+1)⌋`, and how many broke it.
static COVERINGS_SEEN: AtomicU64 = AtomicU64::new(0);
static CAP_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

fn scan(f: &Poly) -> SplittingCovering {
    let c = splitting_covering(f).expect("scan");
    COVERINGS_SEEN.fetch_add(1, Ordering::Relaxed);
    if c.ell() as u64 > c.cap() {
        CAP_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
    c
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn prime_powers(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&q| prime_power(q).is_ok()).collect()
}

fn table_criterion(ids: &[&str], limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut rows = 0;
    for id in ids {
        for row in compute_table(id, DEFAULT_GUARD).expect("table computes") {
            rows += 1;
            if !row.matches {
                bad.push(format!(
                    "{}@{}: measured {} vs {}, reference {} vs {}",
                    row.table_id,
                    row.q,
                    row.measured,
                    row.expected_measured,
                    row.reference,
                    row.expected_reference
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let mut detail = format!(
        "{rows} rows, {} mismatches, {:.2}s (limit {}s)",
        bad.len(),
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    if !bad.is_empty() {
        detail.push_str(&format!("; {}", bad.join("; ")));
    }
    outcome(bad.is_empty() && in_time, detail)
}

fn baseline_and_long_code() -> Outcome {
    let baseline = baseline_tamo_barg(151, 3).unwrap();
    let f = Field::prime(151).unwrap();
    let g = construct_family(&f, Family::Quartic { a: f.from_int(7) }).unwrap();
    let cov = scan(&g.poly);
    let ell = cov.ell();
    let code = LrcCode::build(cov.truncated(17), 17).unwrap();
    let params = (
        code.n(),
        code.k(),
        code.r(),
        optimal_distance(code.n(), code.k(), code.r()),
    );
    outcome(
        baseline == 7 && ell == 18 && ell >= 17 && params == (68, 51, 3, 2),
        format!("baseline {baseline}, ell {ell}, code (n, k, r, d*) = {params:?}"),
    )
}

fn desk_scale_optimality() -> Outcome {
    let start = Instant::now();
    let cases = [
        (13u64, "x^3", 1usize, 11usize),
        (13, "x^3", 2, 8),
        (4, "x^2+x", 1, 4),
    ];
    let mut found = Vec::new();
    let mut pass = true;
    for (q, g, t, expected) in cases {
        let f = Field::of_order(q).unwrap();
        let code = LrcCode::build(scan(&Poly::parse(&f, g).unwrap()), t).unwrap();
        let d = code.min_distance_bruteforce(DISTANCE_GUARD).unwrap();
        pass &= d == expected && d == code.target_distance();
        found.push(d);
    }
    let elapsed = start.elapsed();
    outcome(
        pass && elapsed <= Duration::from_secs(5),
        format!(
            "distances {found:?}, {:.2}s (limit 5s)",
            elapsed.as_secs_f64()
        ),
    )
}

/// Scan vs `X^q mod (f - t)` test on every value, 100 random polynomials per field.
fn scan_vs_gcd() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut disagreements = Vec::new();
    let mut checked = 0u64;
    for q in prime_powers(200) {
        let f = Field::of_order(q).unwrap();
        for _ in 0..100 {
            let deg = rng.gen_range(1..=6);
            let mut coeffs: Vec<Elem> = (0..deg)
                .map(|_| Elem::from_code_unchecked(rng.gen_range(0..f.order())))
                .collect();
            coeffs.push(Elem::from_code_unchecked(rng.gen_range(1..f.order())));
            let poly = Poly::new(&f, coeffs);
            let by_scan = scan(&poly).split_values();
            for t in f.elements() {
                checked += 1;
                let split = is_totally_split_at(&poly, t).unwrap();
                if split != by_scan.binary_search(&t).is_ok() {
                    disagreements.push(format!("{poly} over F_{q} at {t}"));
                }
            }
        }
    }
    outcome(
        disagreements.is_empty(),
        format!(
            "{checked} (poly, t) pairs, {} disagreements {:?}",
            disagreements.len(),
            disagreements.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn random_basis(f: &FieldRef, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    loop {
        let gens: Vec<Elem> = (0..dim)
            .map(|_| Elem::from_code_unchecked(rng.gen_range(1..f.order())))
            .collect();
        if goodpoly::goodpoly::additive_span(f, &gens).is_some() {
            return gens;
        }
    }
}

/// Monomials for every `m | q - 1`, additive polynomials for coordinate and random subspaces.
fn exact_families() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut failures = Vec::new();
    let mut cases = 0;
    for q in prime_powers(4096) {
        let f = Field::of_order(q).unwrap();
        for m in (2..q as u32).filter(|m| (q as u32 - 1).is_multiple_of(*m)) {
            let g = construct_monomial(&f, m).unwrap();
            cases += 1;
            if scan(&g.poly).ell() as u64 != (q - 1) / m as u64 {
                failures.push(format!("x^{m} over F_{q}"));
            }
        }
        let (p, deg) = prime_power(q).unwrap();
        for dim in 1..=deg as usize {
            let coordinate: Vec<Elem> = (0..dim)
                .map(|i| Elem::from_code_unchecked(p.pow(i as u32) as u32))
                .collect();
            let mut bases = vec![coordinate];
            if dim < deg as usize {
                bases.push(random_basis(&f, dim, &mut rng));
            }
            for gens in bases {
                let g = construct_additive(&f, &gens).unwrap();
                cases += 1;
                if scan(&g.poly).ell() as u64 != g.promised_ell.unwrap() {
                    failures.push(format!("additive {gens:?} over F_{q}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{cases} constructions, failures {failures:?}"),
    )
}

/// Lower and upper bounds against the measured ℓ for every valid parameter.
fn bound_soundness() -> Outcome {
    let mut violations = Vec::new();
    let mut checked = 0;
    for q in prime_powers(500) {
        let f = Field::of_order(q).unwrap();
        let p = f.characteristic();
        let mut families = Vec::new();
        for code in 2..f.order() {
            families.push(Family::Cubic {
                b: Elem::from_code_unchecked(code),
            });
        }
        if p != 2 && q >= 5 {
            for code in 1..f.order() {
                families.push(Family::Quartic {
                    a: Elem::from_code_unchecked(code),
                });
            }
        }
        if p != 2 && p != 3 {
            for code in 1..f.order() {
                let a = Elem::from_code_unchecked(code);
                if !f.is_square(a).0 {
                    families.push(Family::Sextic { a });
                }
            }
        }
        for fam in families {
            let rep = theorem_bound(&f, &fam).unwrap();
            let g = construct_family(&f, fam.clone()).unwrap();
            let ell = scan(&g.poly).ell() as i64;
            checked += 1;
            let low_ok = rep.lower.is_none_or(|lo| lo <= ell);
            let high_ok = rep.upper.is_none_or(|hi| ell <= hi);
            if matches!(fam, Family::Quartic { .. } | Family::Sextic { .. }) && rep.upper.is_none()
            {
                violations.push(format!("{} over F_{q}: no upper bound", fam.tag()));
            }
            if !(low_ok && high_ok) {
                violations.push(format!(
                    "{fam:?} over F_{q}: ell {ell} outside [{:?}, {:?}] ({})",
                    rep.lower, rep.upper, rep.case
                ));
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{checked} (family, q) cases, {} violations {:?}",
            violations.len(),
            violations.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn repair_round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let specs = [
        (13u64, "x^3"),
        (151, "x^4+7*x^2"),
        (64, "x^4+x^2+x"),
        (49, "x^6"),
        (241, "x^6-14*x^4+49*x^2"),
    ];
    let codes: Vec<LrcCode> = specs
        .iter()
        .flat_map(|&(q, g)| {
            let f = Field::of_order(q).unwrap();
            let cov = scan(&Poly::parse(&f, g).unwrap());
            let ell = cov.ell();
            [1, ell.div_ceil(2), ell].map(|t| LrcCode::build(cov.clone(), t).unwrap())
        })
        .collect();
    let mut failures = 0;
    let trials = 10_000;
    for _ in 0..trials {
        let code = &codes[rng.gen_range(0..codes.len())];
        let q = code.field().order();
        let msg: Vec<Elem> = (0..code.k())
            .map(|_| Elem::from_code_unchecked(rng.gen_range(0..q)))
            .collect();
        let word = code.encode(&msg).unwrap();
        let mut damaged: Vec<Option<Elem>> = word.iter().copied().map(Some).collect();
        for block in 0..code.ell() {
            if rng.gen_bool(0.5) {
                let range = code.block_positions(block);
                damaged[rng.gen_range(range)] = None;
            }
        }
        let pos = rng.gen_range(0..code.n());
        damaged[pos] = None;
        for p in code.block_positions(code.block_of(pos)) {
            if p != pos {
                damaged[p] = Some(word[p]);
            }
        }
        match code.repair(&damaged) {
            Ok(fixed) if fixed == word => {}
            _ => failures += 1,
        }
    }
    outcome(
        failures == 0,
        format!("{trials} trials, {failures} failures"),
    )
}

fn main() {
    assert!(is_prime(151));
    let criteria: Vec<Criterion> = vec![
        (
            "1 table 1b",
            Box::new(|| table_criterion(&["1b"], Duration::from_secs(30))),
        ),
        (
            "2 table 1a",
            Box::new(|| table_criterion(&["1a"], Duration::from_secs(30))),
        ),
        (
            "3 table 2a",
            Box::new(|| table_criterion(&["2a"], Duration::from_secs(5))),
        ),
        (
            "4 table 2b",
            Box::new(|| table_criterion(&["2b"], Duration::from_secs(10))),
        ),
        (
            "5 tables 3a/3b",
            Box::new(|| table_criterion(&["3a", "3b"], Duration::from_secs(30))),
        ),
        (
            "6 baseline and (68,51,3) code",
            Box::new(baseline_and_long_code),
        ),
        ("7 desk-scale optimality", Box::new(desk_scale_optimality)),
        ("8a scan vs gcd split test", Box::new(scan_vs_gcd)),
        ("8b monomial/additive exact ell", Box::new(exact_families)),
        ("8c bound soundness q <= 500", Box::new(bound_soundness)),
        ("8d randomized repair", Box::new(repair_round_trips)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let out = check();
        failed += usize::from(!out.pass);
        println!(
            "criterion {name:<34} {} [{:.1}s] {}",
            if out.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
    }
    let seen = COVERINGS_SEEN.load(Ordering::Relaxed);
    let violations = CAP_VIOLATIONS.load(Ordering::Relaxed);
    failed += usize::from(violations != 0);
    println!(
        "criterion {:<34} {} {seen} coverings, {violations} above the cap",
        "8e ell <= floor(q/(r+1))",
        if violations == 0 { "PASS" } else { "FAIL" }
    );
    println!(
        "{} of {} criteria passed",
        criteria.len() + 1 - failed,
        criteria.len() + 1
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
