//! Good polynomials over finite fields and the optimal locally recoverable
//! codes built from them.
//!
//! A polynomial `f` of degree `r + 1` over `F_q` is *(r, ℓ)-good* when it is
//! constant on `ℓ` pairwise disjoint subsets of `F_q`, each of size `r + 1`.
//! Those subsets are exactly the fibers `f^{-1}(t)` of full size, so the
//! largest such `ℓ` is found by one evaluation sweep over the field
//! ([`goodpoly::splitting_covering`]). A good polynomial and its covering
//! give an optimal `(n, k, r)` LRC ([`lrc::LrcCode`]) with `n = (r + 1)ℓ`.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf`]: arithmetic in `F_{p^m}` with a canonical integer encoding.
//! - [`poly`]: dense univariate polynomials, gcd, `X^q mod f`, roots.
//! - [`goodpoly`]: splitting coverings, the explicit families, verification.
//! - [`chebotarev`]: the counting bounds for totally split values.
//! - [`lrc`]: build, encode, repair and brute-force distance.
//! - [`tables`]: recomputation of the published reference tables.
//! - [`io`]: JSON file formats for coverings, codes and bound reports.
//! - [`cli`]: the `goodpoly` command line.

pub mod chebotarev;
pub mod cli;
pub mod gf;
pub mod goodpoly;
pub mod io;
pub mod lrc;
pub mod poly;
pub mod tables;

pub use gf::{Elem, Field, FieldElement, FieldRef};
pub use goodpoly::{Family, GoodPoly, SplittingCovering};
pub use lrc::LrcCode;
pub use poly::Poly;
