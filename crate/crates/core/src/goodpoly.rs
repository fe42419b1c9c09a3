//! Splitting coverings and the explicit good-polynomial families.
//!
//! For `f` of degree `r + 1`, a value `t ∈ F_q` whose fiber `f^{-1}(t)` has
//! exactly `r + 1` elements is a *totally split value*: `f - t` factors into
//! distinct linear factors. The full-size fibers are pairwise disjoint, so
//! collecting them gives the largest splitting covering of `f`, and their
//! number `ℓ` is the largest value for which `f` is `(r, ℓ)`-good.
//!
//! [`splitting_covering`] finds them with one evaluation sweep over the
//! field. [`is_totally_split_at`] decides the same question for a single
//! value through `X^q mod (f - t)`, independently of the sweep.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::chebotarev::{self, BoundReport};
use crate::gf::{Elem, FieldRef, GfError, DEFAULT_GUARD};
use crate::poly::{Poly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoodPolyError {
    #[error("polynomial must have degree at least {min}, got {got:?}")]
    Degree { min: usize, got: Option<usize> },
    #[error("field order {q} exceeds the scan guard {guard}")]
    GuardExceeded { q: u64, guard: u64 },
    #[error("polynomial {0} is not separable (it lies in F_q[X^p])")]
    NotSeparable(String),
    #[error("{family}: {reason}")]
    Hypothesis {
        family: &'static str,
        reason: String,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Bound(#[from] chebotarev::BoundError),
}

fn hypothesis(family: &'static str, reason: impl Into<String>) -> GoodPolyError {
    GoodPolyError::Hypothesis {
        family,
        reason: reason.into(),
    }
}

/// One block `A_i` of a covering together with the common value `t_i = f(A_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSet {
    pub t: Elem,
    pub points: Vec<Elem>,
}

/// The blocks on which a polynomial is constant.
///
/// Coverings produced by [`splitting_covering`] are sorted by `t` and each
/// block by encoding. [`SplittingCovering::from_parts`] accepts arbitrary
/// blocks; [`verify_covering`] decides whether they are valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingCovering {
    poly: Poly,
    sets: Vec<FiberSet>,
}

impl SplittingCovering {
    /// Assembles a covering without checking it.
    pub fn from_parts(poly: Poly, sets: Vec<FiberSet>) -> Self {
        SplittingCovering { poly, sets }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn field(&self) -> &FieldRef {
        self.poly.field()
    }

    /// Locality `deg f - 1`.
    pub fn r(&self) -> usize {
        self.poly.degree().unwrap_or(0).saturating_sub(1)
    }

    pub fn ell(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[FiberSet] {
        &self.sets
    }

    /// `⌊q / (r + 1)⌋`, the most blocks any covering of this degree can have.
    pub fn cap(&self) -> u64 {
        cap(self.field().order() as u64, self.r())
    }

    /// Values `t` with a full-size fiber, ascending.
    pub fn split_values(&self) -> Vec<Elem> {
        self.sets.iter().map(|s| s.t).collect()
    }

    /// Union of all blocks, ascending.
    pub fn points(&self) -> Vec<Elem> {
        let mut all: Vec<Elem> = self
            .sets
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .collect();
        all.sort_unstable();
        all
    }

    /// Keeps the first `ell` blocks.
    pub fn truncated(&self, ell: usize) -> Self {
        SplittingCovering {
            poly: self.poly.clone(),
            sets: self.sets.iter().take(ell).cloned().collect(),
        }
    }
}

pub fn cap(q: u64, r: usize) -> u64 {
    q / (r as u64 + 1)
}

/// Full-size fibers of `f` under the default guard.
pub fn splitting_covering(f: &Poly) -> Result<SplittingCovering, GoodPolyError> {
    splitting_covering_guarded(f, DEFAULT_GUARD)
}

/// Full-size fibers of `f`, refusing fields larger than `guard`.
///
/// Evaluations run in parallel over ranges of encodings; the grouping is
/// normalised afterwards so the result does not depend on the partitioning.
pub fn splitting_covering_guarded(
    f: &Poly,
    guard: u64,
) -> Result<SplittingCovering, GoodPolyError> {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        got => return Err(GoodPolyError::Degree { min: 1, got }),
    };
    let field = f.field();
    let q = field.order();
    if q as u64 > guard {
        return Err(GoodPolyError::GuardExceeded { q: q as u64, guard });
    }
    let eval = f.evaluator();
    let values: Vec<u32> = (0..q)
        .into_par_iter()
        .with_min_len(1024)
        .map(|a| eval(Elem::from_code_unchecked(a)).code())
        .collect();
    Ok(SplittingCovering {
        poly: f.clone(),
        sets: group_full_fibers(&values, deg, q),
    })
}

/// Groups `a ↦ values[a]` by value and keeps the groups of size `deg`.
fn group_full_fibers(values: &[u32], deg: usize, q: u32) -> Vec<FiberSet> {
    let mut counts = vec![0u32; q as usize];
    for &v in values {
        counts[v as usize] += 1;
    }
    let mut groups: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
    for (a, &v) in values.iter().enumerate() {
        if counts[v as usize] as usize == deg {
            groups
                .entry(v)
                .or_default()
                .push(Elem::from_code_unchecked(a as u32));
        }
    }
    groups
        .into_iter()
        .map(|(t, points)| FiberSet {
            t: Elem::from_code_unchecked(t),
            points,
        })
        .collect()
}

/// Whether `f - t0` splits into `deg f` distinct linear factors, decided by
/// `X^q ≡ X (mod f - t0)`.
pub fn is_totally_split_at(f: &Poly, t0: Elem) -> Result<bool, GoodPolyError> {
    let g = f.sub_constant(t0);
    match g.degree() {
        Some(0) | None => Err(GoodPolyError::Degree {
            min: 1,
            got: f.degree(),
        }),
        Some(1) => Ok(true),
        Some(_) => {
            let h = &g.xq_mod() - &Poly::x(f.field());
            Ok(h.rem(&g).is_zero())
        }
    }
}

/// Why a covering fails [`verify_covering`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoveringDefect {
    /// The polynomial has degree below 2 (no locality).
    Degree(Option<usize>),
    WrongSize {
        set: usize,
        size: usize,
        expected: usize,
    },
    NotConstant {
        set: usize,
        point: Elem,
        value: Elem,
    },
    RepeatedPoint {
        set: usize,
        point: Elem,
    },
    Overlap {
        point: Elem,
    },
    RepeatedValue {
        t: Elem,
    },
    OverCap {
        ell: usize,
        cap: u64,
    },
}

impl fmt::Display for CoveringDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoveringDefect::Degree(d) => write!(f, "polynomial degree {d:?} is below 2"),
            CoveringDefect::WrongSize {
                set,
                size,
                expected,
            } => {
                write!(f, "set {set} has {size} points, expected {expected}")
            }
            CoveringDefect::NotConstant { set, point, value } => {
                write!(f, "set {set}: f({point}) = {value} differs from its t")
            }
            CoveringDefect::RepeatedPoint { set, point } => write!(f, "set {set} repeats {point}"),
            CoveringDefect::Overlap { point } => write!(f, "{point} lies in two sets"),
            CoveringDefect::RepeatedValue { t } => write!(f, "value {t} labels two sets"),
            CoveringDefect::OverCap { ell, cap } => write!(f, "{ell} sets exceed the cap {cap}"),
        }
    }
}

/// Every way in which `c` fails to be a splitting covering of its polynomial.
pub fn covering_defects(c: &SplittingCovering) -> Vec<CoveringDefect> {
    let mut defects = Vec::new();
    let deg = match c.poly.degree() {
        Some(d) if d >= 2 => d,
        d => {
            defects.push(CoveringDefect::Degree(d));
            return defects;
        }
    };
    let mut seen_points = BTreeSet::new();
    let mut seen_values = BTreeSet::new();
    for (i, set) in c.sets.iter().enumerate() {
        if set.points.len() != deg {
            defects.push(CoveringDefect::WrongSize {
                set: i,
                size: set.points.len(),
                expected: deg,
            });
        }
        if !seen_values.insert(set.t) {
            defects.push(CoveringDefect::RepeatedValue { t: set.t });
        }
        let mut local = BTreeSet::new();
        for &a in &set.points {
            let value = c.poly.eval(a);
            if value != set.t {
                defects.push(CoveringDefect::NotConstant {
                    set: i,
                    point: a,
                    value,
                });
            }
            if !local.insert(a) {
                defects.push(CoveringDefect::RepeatedPoint { set: i, point: a });
            } else if !seen_points.insert(a) {
                defects.push(CoveringDefect::Overlap { point: a });
            }
        }
    }
    let cap = c.cap();
    if c.ell() as u64 > cap {
        defects.push(CoveringDefect::OverCap { ell: c.ell(), cap });
    }
    defects
}

/// Constancy, block sizes, disjointness and the `⌊q/(r+1)⌋` cap.
pub fn verify_covering(c: &SplittingCovering) -> bool {
    covering_defects(c).is_empty()
}

/// A family of good polynomials, with the parameters that pick it out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `X^m` with `m | q - 1`.
    Monomial { m: u32 },
    /// `∏_{v ∈ V} (X - v)` for the additive subgroup `V` spanned by the generators.
    Additive { generators: Vec<Elem> },
    /// `X (X - 1)(X - b)`.
    Cubic { b: Elem },
    /// `X^4 + a X^2`.
    Quartic { a: Elem },
    /// `(X^3 - a X)^2` with `a` a non-square.
    Sextic { a: Elem },
    /// `∏_{b ∈ B} (X - b)`.
    FromRoots { roots: Vec<Elem> },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Monomial { .. } => "monomial",
            Family::Additive { .. } => "additive",
            Family::Cubic { .. } => "deg3",
            Family::Quartic { .. } => "deg4",
            Family::Sextic { .. } => "deg6",
            Family::FromRoots { .. } => "from_roots",
        }
    }
}

/// A polynomial produced by one of the family constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPoly {
    pub poly: Poly,
    pub family: Family,
    /// Exact `ℓ` when the family determines it (monomials, additive subgroups).
    pub promised_ell: Option<u64>,
    /// Set for constructions that only give `ℓ = 1` (an additive `V = F_q`).
    pub degenerate: bool,
}

impl GoodPoly {
    pub fn r(&self) -> usize {
        self.poly.degree().unwrap_or(0).saturating_sub(1)
    }
}

/// `X^m`, which is `(m - 1, (q - 1)/m)`-good when `m | q - 1`.
pub fn construct_monomial(field: &FieldRef, m: u32) -> Result<GoodPoly, GoodPolyError> {
    let q = field.order();
    if m < 2 {
        return Err(hypothesis(
            "monomial",
            format!("degree {m} must be at least 2"),
        ));
    }
    if !(q - 1).is_multiple_of(m) {
        return Err(hypothesis(
            "monomial",
            format!("{m} does not divide q - 1 = {}", q - 1),
        ));
    }
    Ok(GoodPoly {
        poly: Poly::monomial(field, Elem::ONE, m as usize),
        family: Family::Monomial { m },
        promised_ell: Some(((q - 1) / m) as u64),
        degenerate: false,
    })
}

/// The `F_p`-span of `generators`, ascending, or `None` if they are dependent.
pub fn additive_span(field: &FieldRef, generators: &[Elem]) -> Option<Vec<Elem>> {
    let p = field.characteristic();
    let mut span: BTreeSet<Elem> = BTreeSet::from([Elem::ZERO]);
    for &g in generators {
        let before = span.len();
        let mut next = BTreeSet::new();
        for &v in &span {
            let mut x = v;
            for _ in 0..p {
                next.insert(x);
                x = field.add(x, g);
            }
        }
        if next.len() != before * p as usize {
            return None;
        }
        span = next;
    }
    Some(span.into_iter().collect())
}

/// `∏_{v ∈ V} (X - v)`, which is `(#V - 1, q/#V)`-good.
pub fn construct_additive(
    field: &FieldRef,
    generators: &[Elem],
) -> Result<GoodPoly, GoodPolyError> {
    if generators.is_empty() {
        return Err(hypothesis("additive", "at least one generator is required"));
    }
    for &g in generators {
        field.elem(g.code() as u64)?;
    }
    let span = additive_span(field, generators)
        .ok_or_else(|| hypothesis("additive", "generators are linearly dependent over F_p"))?;
    let q = field.order() as u64;
    let size = span.len() as u64;
    Ok(GoodPoly {
        poly: Poly::from_roots(field, &span),
        family: Family::Additive {
            generators: generators.to_vec(),
        },
        promised_ell: Some(q / size),
        degenerate: size == q,
    })
}

/// Builds any family, checking its hypotheses.
pub fn construct_family(field: &FieldRef, family: Family) -> Result<GoodPoly, GoodPolyError> {
    let p = field.characteristic();
    let q = field.order();
    for e in family_elements(&family) {
        field.elem(e.code() as u64)?;
    }
    let poly = match &family {
        Family::Monomial { m } => return construct_monomial(field, *m),
        Family::Additive { generators } => return construct_additive(field, generators),
        Family::Cubic { b } => {
            if b.is_zero() || *b == Elem::ONE {
                return Err(hypothesis("deg3", "b must differ from 0 and 1"));
            }
            Poly::from_roots(field, &[Elem::ZERO, Elem::ONE, *b])
        }
        Family::Quartic { a } => {
            if p == 2 || q < 5 {
                return Err(hypothesis(
                    "deg4",
                    format!("q = {q} must be odd and at least 5"),
                ));
            }
            if a.is_zero() {
                return Err(hypothesis("deg4", "a must be nonzero"));
            }
            Poly::new(
                field,
                vec![Elem::ZERO, Elem::ZERO, *a, Elem::ZERO, Elem::ONE],
            )
        }
        Family::Sextic { a } => {
            if p == 2 || p == 3 {
                return Err(hypothesis("deg6", format!("q = {q} must be coprime to 6")));
            }
            if field.is_square(*a).0 {
                return Err(hypothesis("deg6", format!("a = {a} must be a non-square")));
            }
            let inner = Poly::new(
                field,
                vec![Elem::ZERO, field.neg(*a), Elem::ZERO, Elem::ONE],
            );
            &inner * &inner
        }
        Family::FromRoots { roots } => {
            let distinct: BTreeSet<Elem> = roots.iter().copied().collect();
            if distinct.len() != roots.len() {
                return Err(hypothesis("from_roots", "roots must be distinct"));
            }
            if roots.len() < 2 {
                return Err(hypothesis("from_roots", "at least two roots are required"));
            }
            if (p as usize) <= roots.len() {
                return Err(hypothesis(
                    "from_roots",
                    format!("gcd(q, {}!) must be 1, but p = {p}", roots.len()),
                ));
            }
            Poly::from_roots(field, roots)
        }
    };
    Ok(GoodPoly {
        poly,
        family,
        promised_ell: None,
        degenerate: false,
    })
}

fn family_elements(family: &Family) -> Vec<Elem> {
    match family {
        Family::Monomial { .. } => vec![],
        Family::Additive { generators } => generators.clone(),
        Family::Cubic { b } => vec![*b],
        Family::Quartic { a } | Family::Sextic { a } => vec![*a],
        Family::FromRoots { roots } => roots.clone(),
    }
}

/// Measured goodness of a polynomial with the bounds its family promises.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodPolyReport {
    pub poly: Poly,
    pub r: usize,
    pub ell_measured: usize,
    pub cap: u64,
    pub bound_lower: Option<i64>,
    pub bound_upper: Option<i64>,
    pub family_tag: Option<&'static str>,
    pub bounds: Option<BoundReport>,
}

/// Scans `f` and attaches the bounds of `family`, when one is given.
///
/// The family is never inferred from the shape of `f`: callers pass the
/// tag from the constructor that produced it.
pub fn good_params(f: &Poly, family: Option<&Family>) -> Result<GoodPolyReport, GoodPolyError> {
    let covering = splitting_covering(f)?;
    let bounds = match family {
        Some(fam) => Some(chebotarev::theorem_bound(f.field(), fam)?),
        None => None,
    };
    Ok(GoodPolyReport {
        poly: f.clone(),
        r: covering.r(),
        ell_measured: covering.ell(),
        cap: covering.cap(),
        bound_lower: bounds.as_ref().and_then(|b| b.lower),
        bound_upper: bounds.as_ref().and_then(|b| b.upper),
        family_tag: family.map(Family::tag),
        bounds,
    })
}

/// One-sided certificate that the constant field of the splitting field is
/// `F_q`: some value is totally split. `false` proves nothing.
pub fn constants_field_certificate(f: &Poly) -> Result<bool, GoodPolyError> {
    if !f.is_separable() {
        return Err(GoodPolyError::NotSeparable(f.to_string()));
    }
    Ok(splitting_covering(f)?.ell() >= 1)
}
