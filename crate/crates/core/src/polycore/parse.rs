//! Parser for polynomial expressions in `x, y, z`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | 'x' | 'y' | 'z' | '(' expr ')'
//! ```
//!
//! Numbers are integers or finite decimals. Division is only allowed by a
//! nonzero constant.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{Exp, HomoPoly, LinearForm};
use super::rat::{parse_rat, Rat};

/// Intermediate results larger than this are rejected.
pub const MAX_DEGREE: u32 = 64;
const MAX_DEPTH: usize = 128;
const MAX_NUMBER_LEN: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("polynomial is not homogeneous (degrees {low} and {high} both occur)")]
    NotHomogeneous { low: u32, high: u32 },
    #[error("the zero polynomial does not define a curve")]
    Zero,
    #[error("degree exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooLarge,
    #[error("expected a linear form, got degree {0}")]
    NotLinear(u32),
}

/// Sparse polynomial, not necessarily homogeneous.
#[derive(Clone, Debug, Default, PartialEq)]
struct Sparse(BTreeMap<Exp, Rat>);

impl Sparse {
    fn constant(c: Rat) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert([0, 0, 0], c);
        }
        Sparse(m)
    }

    fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Sparse(BTreeMap::from([(e, Rat::one())]))
    }

    fn degree(&self) -> u32 {
        self.0.keys().map(|e| e[0] + e[1] + e[2]).max().unwrap_or(0)
    }

    fn as_constant(&self) -> Option<Rat> {
        match self.0.len() {
            0 => Some(Rat::zero()),
            1 => self.0.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    fn add(mut self, other: &Sparse, sign: bool) -> Self {
        for (e, c) in &other.0 {
            let entry = self.0.entry(*e).or_insert_with(Rat::zero);
            if sign {
                *entry += c;
            } else {
                *entry -= c;
            }
            if entry.is_zero() {
                self.0.remove(e);
            }
        }
        self
    }

    fn mul(&self, other: &Sparse) -> Result<Self, ParseError> {
        if self.degree() + other.degree() > MAX_DEGREE {
            return Err(ParseError::DegreeTooLarge);
        }
        let mut out = BTreeMap::new();
        for (e, c) in &self.0 {
            for (f, d) in &other.0 {
                let g = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                let entry = out.entry(g).or_insert_with(Rat::zero);
                *entry += c * d;
            }
        }
        out.retain(|_, c: &mut Rat| !c.is_zero());
        Ok(Sparse(out))
    }

    fn scale(&self, c: &Rat) -> Self {
        Sparse(self.0.iter().map(|(e, a)| (*e, a * c)).collect())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Sparse, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, op == b'+');
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = acc.mul(&rhs)?;
            } else {
                match rhs.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => {
                        self.pos = at;
                        return self.err("division by zero");
                    }
                    None => {
                        self.pos = at;
                        return self.err("division is only allowed by a constant");
                    }
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Sparse, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.nest(|p| p.unary()).map(|s| s.scale(&-Rat::one()))
            }
            Some(b'+') => {
                self.pos += 1;
                self.nest(|p| p.unary())
            }
            _ => self.power(),
        }
    }

    fn nest(&mut self, f: impl FnOnce(&mut Self) -> Result<Sparse, ParseError>) -> Result<Sparse, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let r = f(self);
        self.depth -= 1;
        r
    }

    fn power(&mut self) -> Result<Sparse, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer exponent");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let k: u32 = match text.parse() {
            Ok(k) if k <= MAX_DEGREE => k,
            _ => return Err(ParseError::DegreeTooLarge),
        };
        if base.degree().saturating_mul(k) > MAX_DEGREE {
            return Err(ParseError::DegreeTooLarge);
        }
        let mut acc = Sparse::constant(Rat::one());
        for _ in 0..k {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Sparse, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric()) {
                    return self.err("unknown identifier");
                }
                Ok(Sparse::var((c - b'x') as usize))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                if self.pos - start > MAX_NUMBER_LEN {
                    self.pos = start;
                    return self.err("numeric literal too long");
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match parse_rat(text) {
                    Some(r) => Ok(Sparse::constant(r)),
                    None => {
                        self.pos = start;
                        self.err("malformed number")
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_sparse(text: &str) -> Result<Sparse, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let s = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(s)
}

/// Parses and expands a homogeneous polynomial. The zero polynomial and
/// non-homogeneous input are errors.
pub fn parse_poly(text: &str) -> Result<HomoPoly, ParseError> {
    let s = parse_sparse(text)?;
    if s.0.is_empty() {
        return Err(ParseError::Zero);
    }
    let degrees: Vec<u32> = s.0.keys().map(|e| e[0] + e[1] + e[2]).collect();
    let low = *degrees.iter().min().unwrap();
    let high = *degrees.iter().max().unwrap();
    if low != high {
        return Err(ParseError::NotHomogeneous { low, high });
    }
    Ok(HomoPoly::from_terms(high, s.0))
}

/// Parses a line given as a linear expression (`x - 2*z`) or as a
/// coefficient triple (`1, 0, -2` or `1 0 -2`).
pub fn parse_line(text: &str) -> Result<LinearForm, ParseError> {
    let parts: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() == 3 {
        if let (Some(a), Some(b), Some(c)) = (parse_rat(parts[0]), parse_rat(parts[1]), parse_rat(parts[2])) {
            return LinearForm::new(a, b, c).ok_or(ParseError::Zero);
        }
    }
    let p = parse_poly(text)?;
    LinearForm::from_poly(&p).ok_or(ParseError::NotLinear(p.degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat::rat;

    #[test]
    fn expands_products() {
        let p = parse_poly("x*y*z").unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.coeff([1, 1, 1]), &rat(1));

        let p = parse_poly("x*y*z*(x+y+z)").unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.term_count(), 3);
        for e in [[2, 1, 1], [1, 2, 1], [1, 1, 2]] {
            assert_eq!(p.coeff(e), &rat(1));
        }
    }

    #[test]
    fn rejects_non_homogeneous() {
        assert_eq!(
            parse_poly("x^2 + y*z + x"),
            Err(ParseError::NotHomogeneous { low: 1, high: 2 })
        );
    }

    #[test]
    fn rejects_zero_and_garbage() {
        assert_eq!(parse_poly("x - x"), Err(ParseError::Zero));
        assert!(matches!(parse_poly("x +"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x / y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("xy"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("(x"), Err(ParseError::Syntax { .. })));
        assert_eq!(parse_poly("x^65"), Err(ParseError::DegreeTooLarge));
        assert_eq!(parse_poly("(x^9)^9"), Err(ParseError::DegreeTooLarge));
    }

    #[test]
    fn rational_constants() {
        let p = parse_poly("x/2 + 0.5*y - -z").unwrap();
        assert_eq!(p.coeff([1, 0, 0]), &crate::polycore::rat::ratio(1, 2));
        assert_eq!(p.coeff([0, 1, 0]), &crate::polycore::rat::ratio(1, 2));
        assert_eq!(p.coeff([0, 0, 1]), &rat(1));
    }

    #[test]
    fn lines_in_both_notations() {
        let a = parse_line("2*x - 4*z").unwrap();
        let b = parse_line("1, 0, -2").unwrap();
        let c = parse_line("3 0 -6").unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(parse_line("x*y"), Err(ParseError::NotLinear(2)));
        assert_eq!(parse_line("0,0,0"), Err(ParseError::Zero));
    }

    #[test]
    fn deep_nesting_is_rejected_not_overflowed() {
        let s = format!("{}x{}", "(".repeat(10_000), ")".repeat(10_000));
        assert!(parse_poly(&s).is_err());
        let s = format!("{}x", "-".repeat(10_000));
        assert!(parse_poly(&s).is_err());
    }
}
