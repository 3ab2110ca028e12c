//! Text format for polynomials and polynomial matrices.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | var ['^' int] | '(' poly ')' ['^' int]
//! var    := 'x' digits
//! ```
//! Whitespace is ignored. Juxtaposition is an error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::mono::Monomial;
use crate::poly::{HomogeneousForm, MultiPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected {found} at position {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("variable x{index} at position {pos} is out of range (ring has {nvars} variables)")]
    VariableOutOfRange { pos: usize, index: usize, nvars: usize },
    #[error("bad exponent at position {0}")]
    BadExponent(usize),
    #[error("zero denominator at position {0}")]
    ZeroDenominator(usize),
    #[error("coefficient at position {pos}: {source}")]
    Coefficient { pos: usize, source: FieldError },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("matrix row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("matrix entry ({row},{col}): {source}")]
    Entry { row: usize, col: usize, source: Box<ParseError> },
    #[error("empty input")]
    Empty,
}

struct Parser<'a, K: Field> {
    s: &'a [u8],
    pos: usize,
    field: K,
    nvars: usize,
}

impl<'a, K: Field> Parser<'a, K> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        let found = match self.s.get(self.pos) {
            Some(c) => format!("{:?}", *c as char),
            None => "end of input".to_string(),
        };
        ParseError::Unexpected {
            pos: self.pos,
            found,
        }
    }

    fn digits(&mut self) -> Option<&'a [u8]> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos > start {
            Some(&self.s[start..self.pos])
        } else {
            None
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let at = self.pos;
        let d = self.digits().ok_or(ParseError::BadExponent(at))?;
        std::str::from_utf8(d)
            .unwrap()
            .parse::<u32>()
            .ok()
            .filter(|&e| e < 64)
            .ok_or(ParseError::BadExponent(at))
    }

    fn poly(&mut self) -> Result<MultiPoly<K>, ParseError> {
        let mut acc = MultiPoly::zero(self.field, self.nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly<K>, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly<K>, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = BigInt::parse_bytes(self.digits().unwrap(), 10).unwrap();
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.digits().ok_or_else(|| self.unexpected())?;
                    den = BigInt::parse_bytes(d, 10).unwrap();
                    if den.is_zero() {
                        return Err(ParseError::ZeroDenominator(at));
                    }
                }
                let q = BigRational::new(num, den);
                let c = self
                    .field
                    .from_rational(&q)
                    .map_err(|source| ParseError::Coefficient { pos: start, source })?;
                Ok(MultiPoly::constant(self.field, self.nvars, c))
            }
            Some(b'x') => {
                self.pos += 1;
                let d = self.digits().ok_or_else(|| self.unexpected())?;
                let index: usize = std::str::from_utf8(d).unwrap().parse().unwrap_or(usize::MAX);
                if index >= self.nvars {
                    return Err(ParseError::VariableOutOfRange {
                        pos: start,
                        index,
                        nvars: self.nvars,
                    });
                }
                let e = self.exponent()?;
                Ok(MultiPoly::monomial(
                    self.field,
                    self.nvars,
                    Monomial::var(index).pow(e),
                    self.field.one(),
                ))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            _ => Err(self.unexpected()),
        }
    }
}

impl Monomial {
    fn pow(self, e: u32) -> Monomial {
        (0..e).fold(Monomial::ONE, |acc, _| acc.mul(self))
    }
}

/// Parse a polynomial in `x0..x{nvars-1}`.
pub fn parse_poly<K: Field>(field: K, nvars: usize, text: &str) -> Result<MultiPoly<K>, ParseError> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        field,
        nvars,
    };
    if p.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let out = p.poly()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(out)
}

/// Parse a nonzero homogeneous form.
pub fn parse_form<K: Field>(
    field: K,
    nvars: usize,
    text: &str,
) -> Result<HomogeneousForm<K>, ParseError> {
    Ok(HomogeneousForm::new(parse_poly(field, nvars, text)?)?)
}

/// Parse a matrix: one row per line, entries separated by `;`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix<K: Field>(
    field: K,
    nvars: usize,
    text: &str,
) -> Result<Vec<Vec<MultiPoly<K>>>, ParseError> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let r = rows.len();
        let row = t
            .split(';')
            .enumerate()
            .map(|(c, e)| {
                parse_poly(field, nvars, e).map_err(|source| ParseError::Entry {
                    row: r,
                    col: c,
                    source: Box::new(source),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            let first: &Vec<MultiPoly<K>> = first;
            if first.len() != row.len() {
                return Err(ParseError::Ragged {
                    row: r,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(rows)
}

pub fn format_matrix<K: Field>(rows: &[Vec<MultiPoly<K>>]) -> String {
    let mut s = String::new();
    for r in rows {
        let parts: Vec<String> = r.iter().map(|p| p.to_string()).collect();
        s.push_str(&parts.join("; "));
        s.push('\n');
    }
    s
}
