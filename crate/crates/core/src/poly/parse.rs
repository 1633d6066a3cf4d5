//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | variable ('^' uint)? | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Whitespace between tokens is ignored. Multiplication must be written
//! explicitly.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{ExponentVector, Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("exponent overflow at byte {offset}")]
    ExponentOverflow { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownVariable { offset, .. }
            | ParseError::ExponentOverflow { offset } => *offset,
        }
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, ring };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.syntax("expected `+`, `-` or `*`"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let offset = self.pos;
            let rhs = self.factor()?;
            let overflow = acc
                .max_exponents()
                .iter()
                .zip(rhs.max_exponents())
                .any(|(a, b)| a.checked_add(b).is_none());
            if overflow {
                return Err(ParseError::ExponentOverflow { offset });
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(ParseError::Syntax { offset: at, message: "zero denominator".into() });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(self.ring, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self.ring.index_of(name).ok_or_else(|| ParseError::UnknownVariable {
                    name: name.to_string(),
                    offset: start,
                })?;
                let mut exponent = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let e = self.uint()?;
                    exponent = u32::try_from(e).map_err(|_| ParseError::ExponentOverflow { offset: at })?;
                }
                let mut exps = vec![0u32; self.ring.dimension()];
                exps[i] = exponent;
                Ok(Polynomial::monomial(self.ring, ExponentVector::new(exps), Rational::from_integer(1.into())))
            }
            Some(_) => Err(self.syntax("expected a number, a variable or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an unsigned integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }
}
