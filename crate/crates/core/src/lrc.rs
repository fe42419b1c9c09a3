//! Optimal locally recoverable codes from a good polynomial.
//!
//! Given `g` of degree `r + 1` with a covering `A_1, …, A_ℓ` and `1 ≤ t ≤ ℓ`,
//! a message `a = (a_{i,j})`, `0 ≤ i < r`, `0 ≤ j < t`, is encoded as the
//! evaluations of
//!
//! ```text
//! f_a(X) = Σ_i Σ_j a_{i,j} g(X)^j X^i
//! ```
//!
//! on `A = ∪ A_i`. On each `A_i` the polynomial `g` is a constant, so `f_a`
//! restricted to a block has degree at most `r - 1` and any erased symbol is
//! recovered from the other `r` symbols of its block.
//!
//! Messages are flattened with `i` outer and `j` inner, so `a_{i,j}` sits at
//! index `i·t + j`. Positions follow the covering order and, within a block,
//! the point encodings in increasing order. Both conventions are fixed at
//! build time and recorded in the code file.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{Elem, FieldRef};
use crate::goodpoly::{covering_defects, SplittingCovering};
use crate::poly::Poly;

/// Default cap on `q^k` for exhaustive distance computation.
pub const DISTANCE_GUARD: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LrcError {
    #[error("t = {t} must satisfy 1 ≤ t ≤ ℓ = {ell}")]
    TOutOfRange { t: usize, ell: usize },
    #[error("locality r = deg g - 1 must be at least 1")]
    TrivialLocality,
    #[error("covering is invalid: {0}")]
    BadCovering(String),
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("block {block} has {erased} erasures; local repair handles one")]
    MultipleErasures { block: usize, erased: usize },
    #[error("position {0} is not erased")]
    NotErased(usize),
    #[error("position {pos} is outside the code length {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("q^k = {size} exceeds the enumeration guard {guard}; use sampling for an upper bound")]
    GuardExceeded { size: String, guard: u64 },
}

/// An `(n, k, r)` code with `n = (r + 1)ℓ` and `k = r·t`.
#[derive(Debug, Clone)]
pub struct LrcCode {
    covering: SplittingCovering,
    t: usize,
    points: Vec<Elem>,
    /// `g` evaluated on the block of each position.
    block_values: Vec<Elem>,
}

impl LrcCode {
    /// Builds the code from a verified covering of `g`.
    pub fn build(covering: SplittingCovering, t: usize) -> Result<Self, LrcError> {
        let defects = covering_defects(&covering);
        if let Some(first) = defects.first() {
            return Err(LrcError::BadCovering(first.to_string()));
        }
        if covering.r() == 0 {
            return Err(LrcError::TrivialLocality);
        }
        let ell = covering.ell();
        if t == 0 || t > ell {
            return Err(LrcError::TOutOfRange { t, ell });
        }
        let mut points = Vec::new();
        let mut block_values = Vec::new();
        for set in covering.sets() {
            let mut block = set.points.clone();
            block.sort_unstable();
            block_values.extend(std::iter::repeat_n(set.t, block.len()));
            points.extend(block);
        }
        Ok(LrcCode {
            covering,
            t,
            points,
            block_values,
        })
    }

    pub fn field(&self) -> &FieldRef {
        self.covering.field()
    }

    pub fn poly(&self) -> &Poly {
        self.covering.poly()
    }

    pub fn covering(&self) -> &SplittingCovering {
        &self.covering
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn r(&self) -> usize {
        self.covering.r()
    }

    pub fn ell(&self) -> usize {
        self.covering.ell()
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.r() * self.t
    }

    /// Evaluation points in position order.
    pub fn eval_points(&self) -> &[Elem] {
        &self.points
    }

    /// Index of the block holding position `pos`.
    pub fn block_of(&self, pos: usize) -> usize {
        pos / (self.r() + 1)
    }

    /// Positions of block `block`.
    pub fn block_positions(&self, block: usize) -> std::ops::Range<usize> {
        let size = self.r() + 1;
        block * size..(block + 1) * size
    }

    /// `n - k - ⌈k/r⌉ + 2` for this code's parameters.
    pub fn target_distance(&self) -> usize {
        optimal_distance(self.n(), self.k(), self.r())
    }

    /// Value of the basis function `g^j x^i` for message index `i·t + j` at position `pos`.
    fn basis_value(&self, index: usize, pos: usize) -> Elem {
        let f = self.field();
        let (i, j) = (index / self.t, index % self.t);
        f.mul(
            f.pow_u64(self.block_values[pos], j as u64),
            f.pow_u64(self.points[pos], i as u64),
        )
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>, LrcError> {
        if message.len() != self.k() {
            return Err(LrcError::LengthMismatch {
                expected: self.k(),
                got: message.len(),
            });
        }
        let f = self.field();
        let (r, t) = (self.r(), self.t);
        let word = (0..self.n())
            .map(|pos| {
                let x = self.points[pos];
                let gx = self.block_values[pos];
                // Horner in x over the coefficients Σ_j a_{i,j} g(x)^j
                let mut acc = Elem::ZERO;
                for i in (0..r).rev() {
                    let mut inner = Elem::ZERO;
                    for j in (0..t).rev() {
                        inner = f.add(f.mul(inner, gx), message[i * t + j]);
                    }
                    acc = f.add(f.mul(acc, x), inner);
                }
                acc
            })
            .collect();
        Ok(word)
    }

    /// `k × n` matrix whose rows encode the unit messages, in message order.
    pub fn generator_matrix(&self) -> Vec<Vec<Elem>> {
        (0..self.k())
            .map(|index| {
                (0..self.n())
                    .map(|pos| self.basis_value(index, pos))
                    .collect()
            })
            .collect()
    }

    /// Recovers the erased symbol at `pos` from the other `r` symbols of its block.
    pub fn local_repair(&self, word: &[Option<Elem>], pos: usize) -> Result<Elem, LrcError> {
        if word.len() != self.n() {
            return Err(LrcError::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        if pos >= self.n() {
            return Err(LrcError::PositionOutOfRange { pos, n: self.n() });
        }
        if word[pos].is_some() {
            return Err(LrcError::NotErased(pos));
        }
        let block = self.block_of(pos);
        let range = self.block_positions(block);
        let erased = word[range.clone()].iter().filter(|s| s.is_none()).count();
        if erased > 1 {
            return Err(LrcError::MultipleErasures { block, erased });
        }
        let known: Vec<(Elem, Elem)> = range
            .filter(|&p| p != pos)
            .map(|p| (self.points[p], word[p].expect("single erasure")))
            .collect();
        Ok(lagrange_at(self.field(), &known, self.points[pos]))
    }

    /// Fills every erasure, provided no block has more than one.
    pub fn repair(&self, word: &[Option<Elem>]) -> Result<Vec<Elem>, LrcError> {
        if word.len() != self.n() {
            return Err(LrcError::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        (0..self.n())
            .map(|pos| match word[pos] {
                Some(v) => Ok(v),
                None => self.local_repair(word, pos),
            })
            .collect()
    }

    /// Exact minimum distance by enumerating all `q^k` messages.
    pub fn min_distance_bruteforce(&self, guard: u64) -> Result<usize, LrcError> {
        let f = self.field();
        let (p, m) = (f.characteristic() as u64, f.degree() as usize);
        let coords = self.k() * m;
        let total = (p as u128)
            .checked_pow(coords as u32)
            .filter(|&s| s <= guard as u128);
        let Some(total) = total else {
            let size = num_bigint::BigUint::from(f.order()).pow(self.k() as u32);
            return Err(LrcError::GuardExceeded {
                size: size.to_string(),
                guard,
            });
        };
        let total = total as u64;
        // F_p-basis of the code: (p^s)·row_index for every row and digit s.
        let rows = self.generator_matrix();
        let basis: Vec<Vec<Elem>> = rows
            .iter()
            .flat_map(|row| {
                (0..m).map(move |s| {
                    let scale = Elem::from_code_unchecked(p.pow(s as u32) as u32);
                    row.iter().map(|&v| f.mul(scale, v)).collect::<Vec<_>>()
                })
            })
            .collect();
        let n = self.n();
        let chunks = 256u64.min(total);
        let best = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = total * c / chunks;
                let end = total * (c + 1) / chunks;
                let mut digits = vec![0u64; coords];
                let mut word = vec![Elem::ZERO; n];
                let mut rest = start;
                for (d, row) in digits.iter_mut().zip(&basis) {
                    *d = rest % p;
                    rest /= p;
                    for _ in 0..*d {
                        for (w, &v) in word.iter_mut().zip(row) {
                            *w = f.add(*w, v);
                        }
                    }
                }
                let mut best = usize::MAX;
                for index in start..end {
                    if index != 0 {
                        best = best.min(word.iter().filter(|w| !w.is_zero()).count());
                    }
                    // Odometer step: every carried digit adds its basis row once more,
                    // which also takes it from p - 1 back to 0.
                    for (d, row) in digits.iter_mut().zip(&basis) {
                        for (w, &v) in word.iter_mut().zip(row) {
                            *w = f.add(*w, v);
                        }
                        *d += 1;
                        if *d < p {
                            break;
                        }
                        *d = 0;
                    }
                }
                best
            })
            .min()
            .unwrap_or(usize::MAX);
        Ok(if best == usize::MAX { n } else { best })
    }

    /// Smallest weight among `samples` random nonzero codewords. This only
    /// bounds the minimum distance from above.
    pub fn min_distance_sampled(&self, samples: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.field().order();
        let mut best = self.n();
        for _ in 0..samples {
            let msg: Vec<Elem> = (0..self.k())
                .map(|_| Elem::from_code_unchecked(rng.gen_range(0..q)))
                .collect();
            if msg.iter().all(|a| a.is_zero()) {
                continue;
            }
            let w = self.encode(&msg).expect("length matches");
            best = best.min(w.iter().filter(|x| !x.is_zero()).count());
        }
        best
    }
}

/// `n - k - ⌈k/r⌉ + 2`.
pub fn optimal_distance(n: usize, k: usize, r: usize) -> usize {
    assert!(r >= 1 && k <= n);
    (n + 2) - k - k.div_ceil(r)
}

/// Evaluates at `x` the polynomial of degree `< known.len()` through `known`.
pub fn lagrange_at(field: &FieldRef, known: &[(Elem, Elem)], x: Elem) -> Elem {
    let mut acc = Elem::ZERO;
    for (a, &(xa, ya)) in known.iter().enumerate() {
        let mut num = Elem::ONE;
        let mut den = Elem::ONE;
        for (b, &(xb, _)) in known.iter().enumerate() {
            if a != b {
                num = field.mul(num, field.sub(x, xb));
                den = field.mul(den, field.sub(xa, xb));
            }
        }
        let w = field
            .div(num, den)
            .expect("interpolation nodes are distinct");
        acc = field.add(acc, field.mul(ya, w));
    }
    acc
}

/// Rank over the field by Gaussian elimination.
pub fn rank(field: &FieldRef, rows: &[Vec<Elem>]) -> usize {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<Elem> = m[rank].iter().map(|&v| field.mul(v, inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let c = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = field.sub(*v, field.mul(c, pv));
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::goodpoly::splitting_covering;

    fn e(code: u32) -> Elem {
        Elem::from_code_unchecked(code)
    }

    fn cube_code(t: usize) -> LrcCode {
        let f13 = Field::prime(13).unwrap();
        let g = Poly::parse(&f13, "x^3").unwrap();
        LrcCode::build(splitting_covering(&g).unwrap(), t).unwrap()
    }

    #[test]
    fn parameters() {
        let c = cube_code(2);
        assert_eq!((c.n(), c.k(), c.r(), c.target_distance()), (12, 4, 2, 8));
        let c = cube_code(1);
        assert_eq!((c.n(), c.k(), c.target_distance()), (12, 2, 11));
        let f13 = Field::prime(13).unwrap();
        let cov = splitting_covering(&Poly::parse(&f13, "x^3").unwrap()).unwrap();
        assert_eq!(
            LrcCode::build(cov.clone(), 5).unwrap_err(),
            LrcError::TOutOfRange { t: 5, ell: 4 }
        );
        assert!(LrcCode::build(cov, 0).is_err());
    }

    #[test]
    fn point_order_follows_covering() {
        let c = cube_code(1);
        let codes: Vec<u32> = c.eval_points().iter().map(|x| x.code()).collect();
        assert_eq!(codes, [1, 3, 9, 7, 8, 11, 2, 5, 6, 4, 10, 12]);
    }

    #[test]
    fn trivial_messages() {
        let c = cube_code(2);
        let mut msg = vec![Elem::ZERO; 4];
        assert!(c.encode(&msg).unwrap().iter().all(|x| x.is_zero()));
        msg[0] = e(7);
        assert!(c.encode(&msg).unwrap().iter().all(|&x| x == e(7)));
        msg[0] = Elem::ZERO;
        msg[2] = Elem::ONE; // a_{1,0}
        assert_eq!(c.encode(&msg).unwrap(), c.eval_points());
        assert!(c.encode(&[Elem::ZERO; 3]).is_err());
    }

    #[test]
    fn generator_rows() {
        let c = cube_code(2);
        let g = c.generator_matrix();
        assert!(g[0].iter().all(|&x| x == Elem::ONE));
        assert_eq!(g[2], c.eval_points());
        assert_eq!(rank(c.field(), &g), 4);
    }

    #[test]
    fn rank_against_dependent_rows() {
        let f7 = Field::prime(7).unwrap();
        let rows = vec![
            vec![e(1), e(2), e(3)],
            vec![e(2), e(4), e(6)],
            vec![e(0), e(1), e(1)],
        ];
        assert_eq!(rank(&f7, &rows), 2);
        assert_eq!(rank(&f7, &[]), 0);
    }

    #[test]
    fn repair_identity_codeword() {
        let c = cube_code(2);
        let msg = [e(0), e(0), e(1), e(0)];
        let word: Vec<Option<Elem>> = c.encode(&msg).unwrap().into_iter().map(Some).collect();
        let pos = c.eval_points().iter().position(|&x| x == e(3)).unwrap();
        let mut damaged = word.clone();
        damaged[pos] = None;
        assert_eq!(c.local_repair(&damaged, pos).unwrap(), e(3));
        assert_eq!(c.local_repair(&word, pos), Err(LrcError::NotErased(pos)));
        damaged[pos + 1] = None;
        assert!(matches!(
            c.local_repair(&damaged, pos),
            Err(LrcError::MultipleErasures { erased: 2, .. })
        ));
    }

    #[test]
    fn repair_all_blocks() {
        let c = cube_code(2);
        let msg = [e(4), e(11), e(2), e(9)];
        let word = c.encode(&msg).unwrap();
        let mut damaged: Vec<Option<Elem>> = word.iter().copied().map(Some).collect();
        for block in 0..c.ell() {
            damaged[c.block_positions(block).start + block % 3] = None;
        }
        assert_eq!(c.repair(&damaged).unwrap(), word);
    }

    #[test]
    fn brute_force_distances() {
        assert_eq!(
            cube_code(1)
                .min_distance_bruteforce(DISTANCE_GUARD)
                .unwrap(),
            11
        );
        assert_eq!(
            cube_code(2)
                .min_distance_bruteforce(DISTANCE_GUARD)
                .unwrap(),
            8
        );
        let f4 = Field::new(2, 2).unwrap();
        let g = Poly::parse(&f4, "x^2+x").unwrap();
        let c = LrcCode::build(splitting_covering(&g).unwrap(), 1).unwrap();
        assert_eq!((c.n(), c.k(), c.r()), (4, 1, 1));
        assert_eq!(c.min_distance_bruteforce(DISTANCE_GUARD).unwrap(), 4);
        assert!(matches!(
            cube_code(2).min_distance_bruteforce(1000),
            Err(LrcError::GuardExceeded { .. })
        ));
    }

    #[test]
    fn brute_force_matches_plain_enumeration_over_extension_field() {
        // Over F_9 the odometer walks F_3-coordinates; compare with encode().
        let f9 = Field::new(3, 2).unwrap();
        let g = Poly::parse(&f9, "x^4").unwrap();
        let c = LrcCode::build(splitting_covering(&g).unwrap(), 1).unwrap();
        let mut plain = usize::MAX;
        for a in 0..9u32 {
            for b in 0..9u32 {
                for d in 0..9u32 {
                    if a + b + d == 0 {
                        continue;
                    }
                    let w = c.encode(&[e(a), e(b), e(d)]).unwrap();
                    plain = plain.min(w.iter().filter(|x| !x.is_zero()).count());
                }
            }
        }
        assert_eq!(c.min_distance_bruteforce(DISTANCE_GUARD).unwrap(), plain);
        assert_eq!(plain, c.target_distance());
    }

    #[test]
    fn sampled_distance_is_an_upper_bound() {
        let c = cube_code(2);
        assert!(c.min_distance_sampled(2000, 7) >= 8);
    }

    #[test]
    fn optimal_distance_examples() {
        assert_eq!(optimal_distance(12, 4, 2), 8);
        assert_eq!(optimal_distance(12, 2, 2), 11);
        assert_eq!(optimal_distance(68, 51, 3), 2);
    }
}
