//! Text and JSON formats.
//!
//! - Field: `p^m` or `q`, optionally followed by `mod=<poly>` (whitespace,
//!   `,` or `;` separated), e.g. `2^3 mod=x^3+x^2+1`.
//! - Covering file: `{field, modulus, poly, r, ell, sets: [{t, A}]}` with
//!   elements as encodings, sets sorted by `t` and each `A` ascending.
//! - Code file: the covering plus `t, n, k, r` and the frozen `eval_points`.
//! - Words and messages: comma-separated encodings, `?` marking an erasure.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{prime_power, Elem, Field, FieldRef, GfError};
use crate::goodpoly::{covering_defects, FiberSet, SplittingCovering};
use crate::lrc::{LrcCode, LrcError};
use crate::poly::{prime_coeffs, Poly, PolyError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("bad field text {text:?}: {reason}")]
    FieldText { text: String, reason: String },
    #[error("bad symbol {0:?}")]
    Symbol(String),
    #[error("inconsistent file: {0}")]
    Inconsistent(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    File(#[from] std::io::Error),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lrc(#[from] LrcError),
}

/// Parses the field text form, building the field under `guard`.
pub fn parse_field(text: &str, guard: u64) -> Result<FieldRef, IoError> {
    let bad = |reason: &str| IoError::FieldText {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let mut tokens = text
        .split(|c: char| c.is_whitespace() || c == ',' || c == ';')
        .filter(|s| !s.is_empty());
    let head = tokens.next().ok_or_else(|| bad("empty"))?;
    let (p, m) = match head.split_once('^') {
        Some((p, m)) => (
            p.trim()
                .parse::<u64>()
                .map_err(|_| bad("characteristic is not an integer"))?,
            m.trim()
                .parse::<u32>()
                .map_err(|_| bad("degree is not an integer"))?,
        ),
        None => prime_power(
            head.parse::<u64>()
                .map_err(|_| bad("order is not an integer"))?,
        )?,
    };
    let mut modulus = None;
    for tok in tokens {
        let Some(poly) = tok.strip_prefix("mod=") else {
            return Err(bad("expected mod=<poly>"));
        };
        let prime = Field::prime(p)?;
        let parsed = Poly::parse(&prime, poly)?;
        modulus = Some(prime_coeffs(&parsed).expect("prime field coefficients"));
    }
    Ok(Field::create(p, m, modulus.as_deref(), guard)?)
}

/// `p^m`.
pub fn field_text(field: &Field) -> String {
    format!("{}^{}", field.characteristic(), field.degree())
}

fn field_from_parts(field: &str, modulus: &str, guard: u64) -> Result<FieldRef, IoError> {
    parse_field(&format!("{field} mod={modulus}"), guard)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEntry {
    pub t: u32,
    #[serde(rename = "A")]
    pub points: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringFile {
    pub field: String,
    pub modulus: String,
    pub poly: String,
    pub r: usize,
    pub ell: usize,
    pub sets: Vec<SetEntry>,
}

impl CoveringFile {
    pub fn from_covering(c: &SplittingCovering) -> Self {
        let field = c.field();
        let mut sets: Vec<SetEntry> = c
            .sets()
            .iter()
            .map(|s| {
                let mut points: Vec<u32> = s.points.iter().map(|x| x.code()).collect();
                points.sort_unstable();
                SetEntry {
                    t: s.t.code(),
                    points,
                }
            })
            .collect();
        sets.sort_by_key(|s| s.t);
        CoveringFile {
            field: field_text(field),
            modulus: field.modulus_text(),
            poly: c.poly().to_string(),
            r: c.r(),
            ell: c.ell(),
            sets,
        }
    }

    /// Rebuilds the covering and checks it against the recorded `r`, `ell` and
    /// the covering conditions.
    pub fn to_covering(&self, guard: u64) -> Result<SplittingCovering, IoError> {
        let field = field_from_parts(&self.field, &self.modulus, guard)?;
        let poly = Poly::parse(&field, &self.poly)?;
        let elem = |code: u32| field.elem(code as u64);
        let sets = self
            .sets
            .iter()
            .map(|s| {
                Ok(FiberSet {
                    t: elem(s.t)?,
                    points: s
                        .points
                        .iter()
                        .map(|&x| elem(x))
                        .collect::<Result<_, _>>()?,
                })
            })
            .collect::<Result<Vec<_>, GfError>>()?;
        let covering = SplittingCovering::from_parts(poly, sets);
        if covering.r() != self.r || covering.ell() != self.ell {
            return Err(IoError::Inconsistent(format!(
                "recorded r = {}, ell = {} but the data gives r = {}, ell = {}",
                self.r,
                self.ell,
                covering.r(),
                covering.ell()
            )));
        }
        if let Some(d) = covering_defects(&covering).first() {
            return Err(IoError::Inconsistent(d.to_string()));
        }
        Ok(covering)
    }
}

/// Layout tag recorded in code files.
pub const MESSAGE_LAYOUT: &str = "a[i*t+j], i outer, j inner";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: String,
    pub modulus: String,
    pub poly: String,
    pub covering: CoveringFile,
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub eval_points: Vec<u32>,
    pub message_layout: String,
}

impl CodeFile {
    pub fn from_code(code: &LrcCode) -> Self {
        let covering = CoveringFile::from_covering(code.covering());
        CodeFile {
            field: covering.field.clone(),
            modulus: covering.modulus.clone(),
            poly: covering.poly.clone(),
            covering,
            t: code.t(),
            n: code.n(),
            k: code.k(),
            r: code.r(),
            eval_points: code.eval_points().iter().map(|x| x.code()).collect(),
            message_layout: MESSAGE_LAYOUT.to_string(),
        }
    }

    /// Rebuilds the code; the stored point order must match the rebuilt one.
    pub fn to_code(&self, guard: u64) -> Result<LrcCode, IoError> {
        if self.field != self.covering.field
            || self.modulus != self.covering.modulus
            || self.poly != self.covering.poly
        {
            return Err(IoError::Inconsistent(
                "code header disagrees with its covering".into(),
            ));
        }
        if self.message_layout != MESSAGE_LAYOUT {
            return Err(IoError::Inconsistent(format!(
                "unknown message layout {:?}",
                self.message_layout
            )));
        }
        let code = LrcCode::build(self.covering.to_covering(guard)?, self.t)?;
        let points: Vec<u32> = code.eval_points().iter().map(|x| x.code()).collect();
        if (code.n(), code.k(), code.r()) != (self.n, self.k, self.r) || points != self.eval_points
        {
            return Err(IoError::Inconsistent(
                "stored parameters or point order differ from the covering".into(),
            ));
        }
        Ok(code)
    }
}

/// Parses comma-separated encodings, `?` for an erasure.
pub fn parse_word(field: &Field, text: &str) -> Result<Vec<Option<Elem>>, IoError> {
    text.split(',')
        .map(str::trim)
        .map(|tok| {
            if tok == "?" {
                return Ok(None);
            }
            let code: u64 = tok.parse().map_err(|_| IoError::Symbol(tok.to_string()))?;
            Ok(Some(field.elem(code)?))
        })
        .collect()
}

/// Like [`parse_word`] but rejects erasures.
pub fn parse_symbols(field: &Field, text: &str) -> Result<Vec<Elem>, IoError> {
    parse_word(field, text)?
        .into_iter()
        .map(|s| s.ok_or_else(|| IoError::Symbol("?".into())))
        .collect()
}

pub fn format_word(word: &[Option<Elem>]) -> String {
    word.iter()
        .map(|s| s.map_or_else(|| "?".to_string(), |e| e.code().to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_symbols(word: &[Elem]) -> String {
    word.iter()
        .map(|e| e.code().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::DEFAULT_GUARD;
    use crate::goodpoly::splitting_covering;

    #[test]
    fn field_text_forms() {
        let f = parse_field("2^3", DEFAULT_GUARD).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let f = parse_field("8 mod=x^3+x^2+1", DEFAULT_GUARD).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
        let f = parse_field("151", DEFAULT_GUARD).unwrap();
        assert_eq!(f.order(), 151);
        assert!(parse_field("12", DEFAULT_GUARD).is_err());
        assert!(parse_field("2^3 mod=x^3+x^2+x+1", DEFAULT_GUARD).is_err());
        assert!(parse_field("2^3 x", DEFAULT_GUARD).is_err());
        assert!(parse_field("2^40", DEFAULT_GUARD).is_err());
    }

    #[test]
    fn covering_round_trip() {
        let f = parse_field("13", DEFAULT_GUARD).unwrap();
        let c = splitting_covering(&Poly::parse(&f, "x^3").unwrap()).unwrap();
        let file = CoveringFile::from_covering(&c);
        assert_eq!(file.sets.len(), 4);
        assert_eq!(
            file.sets[0],
            SetEntry {
                t: 1,
                points: vec![1, 3, 9]
            }
        );
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"A\":[1,3,9]"));
        let back: CoveringFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_covering(DEFAULT_GUARD).unwrap(), c);
    }

    #[test]
    fn tampered_covering_is_rejected() {
        let f = parse_field("13", DEFAULT_GUARD).unwrap();
        let c = splitting_covering(&Poly::parse(&f, "x^3").unwrap()).unwrap();
        let mut file = CoveringFile::from_covering(&c);
        file.sets[0].points[0] = 2;
        assert!(file.to_covering(DEFAULT_GUARD).is_err());
        let mut file = CoveringFile::from_covering(&c);
        file.ell = 3;
        assert!(file.to_covering(DEFAULT_GUARD).is_err());
    }

    #[test]
    fn code_round_trip() {
        let f = parse_field("13", DEFAULT_GUARD).unwrap();
        let c = splitting_covering(&Poly::parse(&f, "x^3").unwrap()).unwrap();
        let code = LrcCode::build(c, 2).unwrap();
        let file = CodeFile::from_code(&code);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let back: CodeFile = serde_json::from_str(&json).unwrap();
        let rebuilt = back.to_code(DEFAULT_GUARD).unwrap();
        assert_eq!(rebuilt.eval_points(), code.eval_points());
        let mut moved = file.clone();
        moved.eval_points.swap(0, 1);
        assert!(moved.to_code(DEFAULT_GUARD).is_err());
    }

    #[test]
    fn words() {
        let f = parse_field("13", DEFAULT_GUARD).unwrap();
        let w = parse_word(&f, "1, ?,12").unwrap();
        assert_eq!(
            w,
            vec![Some(Elem::ONE), None, Some(Elem::from_code_unchecked(12))]
        );
        assert_eq!(format_word(&w), "1,?,12");
        assert!(parse_word(&f, "13").is_err());
        assert!(parse_symbols(&f, "1,?").is_err());
    }
}
