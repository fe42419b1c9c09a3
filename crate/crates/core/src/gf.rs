//! Exact arithmetic in `F_q`, `q = p^m`.
//!
//! A [`Field`] is fixed by its characteristic `p`, its extension degree `m`
//! and a monic irreducible modulus of degree `m` over `F_p`. Elements are
//! stored as their canonical encoding: the element `c_0 + c_1·α + … + c_{m-1}·α^{m-1}`
//! (with `α` a root of the modulus and `0 ≤ c_i < p`) is the integer
//! `c_0 + c_1·p + … + c_{m-1}·p^{m-1}`. The encoding is a bijection onto
//! `0..q` and provides the total order used whenever ties must break
//! deterministically.
//!
//! Arithmetic lives on the field (`field.mul(a, b)`) and operates on the
//! plain [`Elem`] codes. [`FieldElement`] pairs a code with its field for
//! call sites that need mismatches reported instead of assumed away.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// Default upper limit on the field order accepted by [`Field::create`].
pub const DEFAULT_GUARD: u64 = 1 << 26;

/// Hard ceiling on any field order, whatever the guard says: encodings are `u32`.
pub const MAX_ORDER: u64 = 1 << 31;

/// Shared handle to an immutable field description.
pub type FieldRef = Arc<Field>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the resource guard {guard}")]
    GuardExceeded { p: u64, m: u32, guard: u64 },
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    BadModulus { expected: u32, p: u32 },
    #[error("modulus {0} is reducible over the prime field")]
    ReducibleModulus(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("encoding {code} out of range for a field of order {q}")]
    EncodingOutOfRange { code: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
}

/// A field element, identified by its canonical encoding.
///
/// The field it belongs to is not recorded; see [`FieldElement`] for the
/// checked pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a raw code without range checking. Use [`Field::elem`] for input.
    #[inline]
    pub const fn from_code_unchecked(code: u32) -> Self {
        Elem(code)
    }

    #[inline]
    pub const fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field `F_{p^m}` with a fixed modulus.
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first, length `m + 1`.
    modulus: Vec<u32>,
    /// `p^i` for `0 ≤ i ≤ m`.
    powers: Vec<u32>,
    /// Modulus as a bit pattern without the leading term (characteristic 2 only).
    reduce_bits: u32,
    non_residue: OnceLock<Option<Elem>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field({}^{} mod {})",
            self.p,
            self.m,
            self.modulus_text()
        )
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.m)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, or fails if `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32), GfError> {
    if q < 2 {
        return Err(GfError::NotPrimePower(q));
    }
    let mut p = 0;
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Ok((q, 1));
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest == 1 {
        Ok((p, m))
    } else {
        Err(GfError::NotPrimePower(q))
    }
}

impl Field {
    /// `F_{p^m}` with the default modulus and the default guard.
    pub fn new(p: u64, m: u32) -> Result<FieldRef, GfError> {
        Self::create(p, m, None, DEFAULT_GUARD)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FieldRef, GfError> {
        Self::new(p, 1)
    }

    /// The field of order `q`, factoring `q` into `p^m`.
    pub fn of_order(q: u64) -> Result<FieldRef, GfError> {
        let (p, m) = prime_power(q)?;
        Self::new(p, m)
    }

    /// Builds `F_{p^m}`.
    ///
    /// Without an explicit modulus, the monic irreducible of degree `m` with
    /// the smallest integer value `Σ c_i p^i` is used. A supplied modulus is
    /// given constant term first and must be monic of degree `m`.
    pub fn create(
        p: u64,
        m: u32,
        modulus: Option<&[u32]>,
        guard: u64,
    ) -> Result<FieldRef, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let limit = guard.min(MAX_ORDER);
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= limit)
            .ok_or(GfError::GuardExceeded { p, m, guard })?;
        let p32 = p as u32;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1
                    || coeffs[m as usize] != 1
                    || coeffs.iter().any(|&c| c >= p32)
                {
                    return Err(GfError::BadModulus {
                        expected: m,
                        p: p32,
                    });
                }
                if !prime_poly::is_irreducible(p32, coeffs) {
                    return Err(GfError::ReducibleModulus(prime_poly::format(coeffs)));
                }
                coeffs.to_vec()
            }
            None => prime_poly::smallest_irreducible(p32, m),
        };
        let powers = (0..=m).map(|i| p32.pow(i)).collect();
        let reduce_bits = if p32 == 2 {
            modulus[..m as usize]
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        Ok(Arc::new(Field {
            p: p32,
            m,
            q: q as u32,
            modulus,
            powers,
            reduce_bits,
            non_residue: OnceLock::new(),
        }))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients over `F_p`, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Modulus in polynomial text form, e.g. `x^3+x+1`.
    pub fn modulus_text(&self) -> String {
        prime_poly::format(&self.modulus)
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The element with canonical encoding `code`.
    pub fn elem(&self, code: u64) -> Result<Elem, GfError> {
        if code < self.q as u64 {
            Ok(Elem(code as u32))
        } else {
            Err(GfError::EncodingOutOfRange { code, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// The generator `α` of the extension (a root of the modulus).
    ///
    /// For prime fields this is the single root of the linear modulus.
    pub fn generator(&self) -> Elem {
        if self.m == 1 {
            self.neg(Elem(self.modulus[0]))
        } else {
            Elem(self.p)
        }
    }

    /// True when the element lies in the prime subfield.
    #[inline]
    pub fn in_prime_field(&self, a: Elem) -> bool {
        a.0 < self.p
    }

    /// All elements in increasing canonical encoding.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.q).map(Elem)
    }

    /// Base-`p` digits of an element (coefficients of `α^i`).
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = vec![0; self.m as usize];
        let mut x = a.0;
        for d in out.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        debug_assert!(digits.len() <= self.m as usize);
        Elem(
            digits
                .iter()
                .zip(&self.powers)
                .map(|(&d, &pw)| (d % self.p) * pw)
                .sum(),
        )
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &pw in &self.powers[..self.m as usize] {
            let mut d = x % self.p + y % self.p;
            if d >= self.p {
                d -= self.p;
            }
            out += d * pw;
            x /= self.p;
            y /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.m == 1 {
            return Elem(self.p - a.0);
        }
        let mut x = a.0;
        let mut out = 0;
        for &pw in &self.powers[..self.m as usize] {
            let d = x % self.p;
            if d != 0 {
                out += (self.p - d) * pw;
            }
            x /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.m == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if self.p == 2 {
            return Elem(self.mul_binary(a.0, b.0));
        }
        self.mul_digits(a, b)
    }

    fn mul_binary(&self, mut a: u32, mut b: u32) -> u32 {
        let top = 1u32 << self.m;
        let mut acc = 0;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= top | self.reduce_bits;
            }
        }
        acc
    }

    fn mul_digits(&self, a: Elem, b: Elem) -> Elem {
        let m = self.m as usize;
        let p = self.p as u64;
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..m {
            da[i] = (x % self.p) as u64;
            db[i] = (y % self.p) as u64;
            x /= self.p;
            y /= self.p;
        }
        let mut prod = [0u64; 64];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // X^k = X^(k-m) · X^m and X^m ≡ -(modulus without leading term)
            for i in 0..m {
                let sub = (c * self.modulus[i] as u64) % p;
                prod[k - m + i] = (prod[k - m + i] + p - sub) % p;
            }
            prod[k] = 0;
        }
        let mut out = 0u32;
        for i in (0..m).rev() {
            out = out * self.p + prod[i] as u32;
        }
        Elem(out)
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    /// `a^e` for a non-negative exponent.
    pub fn pow_u64(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e`; negative exponents require a nonzero base.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem, GfError> {
        if e >= 0 {
            Ok(self.pow_u64(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow_u64(inv, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow_u64(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Squareness test; when `e` is a square also returns the square root
    /// with the smaller canonical encoding.
    pub fn is_square(&self, e: Elem) -> (bool, Option<Elem>) {
        if e.is_zero() {
            return (true, Some(Elem::ZERO));
        }
        if self.p == 2 {
            // Frobenius is a bijection; the root is e^(q/2).
            return (true, Some(self.pow_u64(e, self.q as u64 / 2)));
        }
        let half = (self.q as u64 - 1) / 2;
        if self.pow_u64(e, half) != Elem::ONE {
            return (false, None);
        }
        let root = self.tonelli_shanks(e);
        let other = self.neg(root);
        (true, Some(root.min(other)))
    }

    /// Square root of a known nonzero square in odd characteristic.
    fn tonelli_shanks(&self, e: Elem) -> Elem {
        let mut odd = self.q as u64 - 1;
        let mut s = 0u32;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = self
            .quadratic_non_residue()
            .expect("odd field has a non-residue");
        let mut m = s;
        let mut c = self.pow_u64(z, odd);
        let mut t = self.pow_u64(e, odd);
        let mut r = self.pow_u64(e, odd.div_ceil(2));
        while t != Elem::ONE {
            let mut i = 0;
            let mut tt = t;
            while tt != Elem::ONE {
                tt = self.square(tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(b);
            }
            m = i;
            c = self.square(b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    /// The non-square with the smallest encoding (odd characteristic only).
    pub fn quadratic_non_residue(&self) -> Option<Elem> {
        *self.non_residue.get_or_init(|| {
            if self.p == 2 {
                return None;
            }
            let half = (self.q as u64 - 1) / 2;
            self.elements()
                .skip(2)
                .find(|&z| self.pow_u64(z, half) != Elem::ONE)
        })
    }

    /// Evaluates a polynomial with prime-field coefficients (constant term
    /// first) at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: Elem) -> Elem {
        coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| {
            self.add(self.mul(acc, x), self.from_int(c as i64))
        })
    }

    /// Embeds a subfield generator: the root of `minimal` (prime-field
    /// coefficients, constant term first) with the smallest encoding.
    pub fn smallest_root_of(&self, minimal: &[u32]) -> Option<Elem> {
        self.elements()
            .find(|&x| self.eval_prime_poly(minimal, x).is_zero())
    }

    /// Pairs `a` with this field.
    pub fn element(self: &Arc<Self>, a: Elem) -> FieldElement {
        FieldElement {
            field: Arc::clone(self),
            elem: a,
        }
    }
}

/// Binary and unary operations accepted by [`FieldElement::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(i64),
}

/// An element tagged with its field; operations check that both operands agree.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldRef,
    elem: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.elem.0, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.elem.0)
    }
}

impl FieldElement {
    pub fn new(field: &FieldRef, code: u64) -> Result<Self, GfError> {
        Ok(FieldElement {
            field: Arc::clone(field),
            elem: field.elem(code)?,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn code(&self) -> u32 {
        self.elem.0
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), GfError> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch(
                format!("{:?}", self.field),
                format!("{:?}", other.field),
            ))
        }
    }

    /// Applies `op`. Unary operations ignore `other`, but it must still
    /// share the field when given.
    pub fn arith(
        &self,
        op: ArithOp,
        other: Option<&FieldElement>,
    ) -> Result<FieldElement, GfError> {
        if let Some(o) = other {
            self.same_field(o)?;
        }
        let f = &self.field;
        let rhs = || other.map(|o| o.elem).unwrap_or(Elem::ZERO);
        let elem = match op {
            ArithOp::Add => f.add(self.elem, rhs()),
            ArithOp::Sub => f.sub(self.elem, rhs()),
            ArithOp::Mul => f.mul(self.elem, rhs()),
            ArithOp::Div => f.div(self.elem, rhs())?,
            ArithOp::Neg => f.neg(self.elem),
            ArithOp::Inv => f.inv(self.elem)?,
            ArithOp::Pow(e) => f.pow(self.elem, e)?,
        };
        Ok(FieldElement {
            field: Arc::clone(f),
            elem,
        })
    }

    pub fn is_square(&self) -> (bool, Option<FieldElement>) {
        let (flag, root) = self.field.is_square(self.elem);
        (flag, root.map(|r| self.field.element(r)))
    }
}

/// Polynomials over a prime field as plain coefficient vectors. Only what
/// modulus selection needs.
mod prime_poly {
    fn trim(v: &mut Vec<u32>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Remainder of `a` modulo the nonzero `b`.
    fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        if db == 0 {
            return vec![0];
        }
        let p64 = p as u64;
        let lead_inv = inv_mod(b[db], p) as u64;
        let mut r = a.to_vec();
        while r.len() > db {
            let k = r.len() - 1;
            let c = r[k] as u64 * lead_inv % p64;
            if c != 0 {
                for i in 0..db {
                    let s = c * b[i] as u64 % p64;
                    r[k - db + i] = ((r[k - db + i] as u64 + p64 - s) % p64) as u32;
                }
            }
            r.pop();
        }
        if r.is_empty() {
            r.push(0);
        }
        trim(&mut r);
        r
    }

    fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, f, p)
    }

    fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        acc
    }

    fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn gcd_is_one(a: &[u32], b: &[u32], p: u32) -> bool {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !is_zero(&y) {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x.len() == 1
    }

    /// Irreducibility of a monic polynomial: `gcd(f, X^(p^i) - X) = 1` for
    /// every `i ≤ deg f / 2`.
    pub(super) fn is_irreducible(p: u32, f: &[u32]) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = rem(&x, f, p);
        for _ in 1..=m / 2 {
            h = pow_mod(&h, p as u64, f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            if !gcd_is_one(f, &diff, p) {
                return false;
            }
        }
        true
    }

    /// Monic irreducible of degree `m` with the smallest value `Σ c_i p^i`.
    pub(super) fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
        let m = m as usize;
        let mut coeffs = vec![0u32; m + 1];
        coeffs[m] = 1;
        loop {
            if is_irreducible(p, &coeffs) {
                return coeffs;
            }
            // Increment the lower coefficients as a base-p counter.
            let mut i = 0;
            loop {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
                assert!(i < m, "no irreducible polynomial of degree {m} over F_{p}");
            }
        }
    }

    pub(super) fn format(coeffs: &[u32]) -> String {
        let mut out = String::new();
        for (k, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match (k, c) {
                (0, c) => out.push_str(&c.to_string()),
                (1, 1) => out.push('x'),
                (1, c) => out.push_str(&format!("{c}*x")),
                (k, 1) => out.push_str(&format!("x^{k}")),
                (k, c) => out.push_str(&format!("{c}*x^{k}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
