//! Dense univariate polynomials over a [`Field`](crate::gf::Field).
//!
//! Coefficients are stored constant term first with no trailing zeros, so
//! the zero polynomial has an empty coefficient vector. Degrees in this
//! crate are small (the good-polynomial families are of degree at most 8
//! apart from additive-subgroup products), and a dense layout is all that is
//! needed.
//!
//! Text form: terms `c*x^k` joined by `+`/`-`. An integer coefficient `c` is
//! mapped into the prime subfield; `#n` denotes the element with canonical
//! encoding `n`. Products and parentheses are not part of the grammar.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Elem, FieldElement, FieldRef, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldRef,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} over {:?})", self, self.field)
    }
}

fn assert_same_field(a: &FieldRef, b: &FieldRef) {
    assert!(
        Arc::ptr_eq(a, b) || **a == **b,
        "polynomial operands over different fields: {a:?} vs {b:?}"
    );
}

impl Poly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: Arc::clone(field),
            coeffs,
        }
    }

    /// From raw canonical encodings, constant term first.
    pub fn from_codes(field: &FieldRef, codes: &[u64]) -> Result<Self, PolyError> {
        let coeffs = codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(field, coeffs))
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &FieldRef, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c·X^k`.
    pub fn monomial(field: &FieldRef, c: Elem, k: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    pub fn x(field: &FieldRef) -> Self {
        Self::monomial(field, Elem::ONE, 1)
    }

    /// `∏ (X - b)` over `roots`, in the given order.
    pub fn from_roots(field: &FieldRef, roots: &[Elem]) -> Self {
        let mut acc = Self::constant(field, Elem::ONE);
        for &b in roots {
            acc = acc.mul_linear(b);
        }
        acc
    }

    /// `self · (X - b)`.
    fn mul_linear(&self, b: Elem) -> Self {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = f.add(out[i + 1], c);
            out[i] = f.sub(out[i], f.mul(c, b));
        }
        Self::new(f, out)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, a: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Evaluation closure for repeated use. Polynomials with few nonzero
    /// terms (monomials, additive polynomials) are evaluated term by term,
    /// the rest by Horner.
    pub fn evaluator(&self) -> impl Fn(Elem) -> Elem + Sync + '_ {
        let terms: Vec<(u64, Elem)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, &c)| (k as u64, c))
            .collect();
        let degree = self.coeffs.len().saturating_sub(1) as u64;
        let sparse_cost = terms.len() as u64 * 2 * (64 - degree.leading_zeros() as u64);
        let sparse = sparse_cost < degree;
        move |a| {
            if !sparse {
                return self.eval(a);
            }
            let f = &self.field;
            let mut acc = Elem::ZERO;
            let mut power = Elem::ONE;
            let mut exp = 0;
            for &(k, c) in &terms {
                power = f.mul(power, f.pow_u64(a, k - exp));
                exp = k;
                acc = f.add(acc, f.mul(c, power));
            }
            acc
        }
    }

    /// Evaluation at an element that carries its own field.
    pub fn eval_checked(&self, a: &FieldElement) -> Result<FieldElement, PolyError> {
        if **a.field() != *self.field {
            return Err(GfError::FieldMismatch(
                format!("{:?}", self.field),
                format!("{:?}", a.field()),
            )
            .into());
        }
        Ok(self.field.element(self.eval(a.elem())))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(f.from_int(k as i64), c))
            .collect();
        Self::new(f, coeffs)
    }

    /// False exactly when the polynomial lies in `F_q[X^p]` (constants included).
    pub fn is_separable(&self) -> bool {
        let p = self.field.characteristic() as usize;
        self.coeffs
            .iter()
            .enumerate()
            .any(|(k, c)| k % p != 0 && !c.is_zero())
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Scales to leading coefficient one; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(self.leading())
            .expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// `self - t`.
    pub fn sub_constant(&self, t: Elem) -> Self {
        let f = &self.field;
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(Elem::ZERO);
        }
        coeffs[0] = f.sub(coeffs[0], t);
        Self::new(f, coeffs)
    }

    /// Euclidean division.
    ///
    /// # Panics
    ///
    /// If `divisor` is zero or lives in a different field.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert_same_field(&self.field, &divisor.field);
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f
            .inv(divisor.leading())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor. `gcd(0, 0)` is the zero polynomial.
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert_same_field(&self.field, &other.field);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(self · other) mod modulus`.
    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus)
    }

    /// `X^e mod self` by square-and-multiply.
    ///
    /// # Panics
    ///
    /// If `self` is constant.
    pub fn pow_x_mod(&self, mut e: u64) -> Poly {
        assert!(
            self.degree().is_some_and(|d| d >= 1),
            "modulus must have positive degree"
        );
        let f = &self.field;
        let mut acc = Self::constant(f, Elem::ONE).rem(self);
        let mut base = Self::x(f).rem(self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, self);
            }
            base = base.mul_mod(&base, self);
            e >>= 1;
        }
        acc
    }

    /// `X^q mod self`, `q` the field order.
    pub fn xq_mod(&self) -> Poly {
        self.pow_x_mod(self.field.order() as u64)
    }

    /// Number of distinct roots in `F_q`, as `deg gcd(self, X^q - X)`.
    pub fn distinct_root_count_gcd(&self) -> Result<usize, PolyError> {
        match self.degree() {
            None => Err(PolyError::ZeroPolynomial),
            Some(0) => Ok(0),
            Some(_) => {
                let h = &self.xq_mod() - &Self::x(&self.field);
                Ok(self.gcd(&h).degree().unwrap_or(0))
            }
        }
    }

    /// All roots in `F_q` with multiplicities, in increasing encoding.
    ///
    /// Found by evaluating at every field element; multiplicities by
    /// repeated division by `X - a`.
    pub fn roots(&self) -> Result<Vec<(Elem, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for a in self.field.elements() {
            if !self.eval(a).is_zero() {
                continue;
            }
            let linear = Self::new(&self.field, vec![self.field.neg(a), Elem::ONE]);
            let mut rest = self.clone();
            let mut mult = 0;
            loop {
                let (quot, rem) = rest.div_rem(&linear);
                if !rem.is_zero() {
                    break;
                }
                mult += 1;
                rest = quot;
            }
            out.push((a, mult));
        }
        Ok(out)
    }

    /// Distinct roots only.
    pub fn distinct_roots(&self) -> Result<Vec<Elem>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self
            .field
            .elements()
            .filter(|&a| self.eval(a).is_zero())
            .collect())
    }

    /// `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Parses the text grammar described at module level.
    pub fn parse(field: &FieldRef, text: &str) -> Result<Self, PolyError> {
        Parser::new(field, text).parse()
    }

    fn format_coeff(&self, c: Elem) -> String {
        if self.field.in_prime_field(c) {
            c.code().to_string()
        } else {
            format!("#{}", c.code())
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            };
            match (k, c == Elem::ONE) {
                (0, _) => f.write_str(&self.format_coeff(c))?,
                (_, true) => f.write_str(&var)?,
                (_, false) => write!(f, "{}*{}", self.format_coeff(c), var)?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_same_field(&self.field, &rhs.field);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            f,
            (0..n).map(|k| f.add(self.coeff(k), rhs.coeff(k))).collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_same_field(&self.field, &rhs.field);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            f,
            (0..n).map(|k| f.sub(self.coeff(k), rhs.coeff(k))).collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_same_field(&self.field, &rhs.field);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}

struct Parser<'a> {
    field: &'a FieldRef,
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(field: &'a FieldRef, text: &'a str) -> Self {
        Parser {
            field,
            text,
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn err(&self, reason: impl Into<String>) -> PolyError {
        PolyError::Parse {
            text: self.text.to_string(),
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected a number at position {start}")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.err(format!("number {digits} is too large")))
    }

    fn parse(mut self) -> Result<Poly, PolyError> {
        let f = self.field;
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut coeffs: Vec<Elem> = Vec::new();
        let mut first = true;
        while self.pos < self.chars.len() {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') | Some('\u{2212}') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                Some(c) => return Err(self.err(format!("unexpected {c:?} between terms"))),
                None => unreachable!(),
            };
            first = false;
            let (coeff, power) = self.term()?;
            let coeff = if negative { f.neg(coeff) } else { coeff };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Elem::ZERO);
            }
            coeffs[power] = f.add(coeffs[power], coeff);
        }
        Ok(Poly::new(f, coeffs))
    }

    fn term(&mut self) -> Result<(Elem, usize), PolyError> {
        let f = self.field;
        let coeff = match self.peek() {
            Some('#') => {
                self.pos += 1;
                let n = self.number()?;
                Some(f.elem(n)?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Some(f.from_int((n % f.characteristic() as u64) as i64))
            }
            _ => None,
        };
        if let Some(c) = coeff {
            if self.peek() == Some('*') {
                self.pos += 1;
                if !matches!(self.peek(), Some('x') | Some('X')) {
                    return Err(self.err("expected x after '*'"));
                }
            } else if !matches!(self.peek(), Some('x') | Some('X')) {
                return Ok((c, 0));
            }
        }
        match self.peek() {
            Some('x') | Some('X') => self.pos += 1,
            Some(c) => return Err(self.err(format!("unexpected {c:?}"))),
            None => return Err(self.err("dangling sign")),
        }
        let power = if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.number()?;
            usize::try_from(k)
                .ok()
                .filter(|&k| k <= 1 << 20)
                .ok_or_else(|| self.err("exponent too large"))?
        } else {
            1
        };
        if let Some(c) = self.peek() {
            if c != '+' && c != '-' && c != '\u{2212}' {
                return Err(self.err(format!("unexpected {c:?} after term")));
            }
        }
        Ok((coeff.unwrap_or(Elem::ONE), power))
    }
}

/// Coefficient codes when every coefficient lies in the prime subfield.
pub fn prime_coeffs(poly: &Poly) -> Option<Vec<u32>> {
    let f = poly.field();
    poly.coeffs()
        .iter()
        .map(|&c| f.in_prime_field(c).then_some(c.code()))
        .collect()
}
