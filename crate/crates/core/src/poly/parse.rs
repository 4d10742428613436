//! Recursive-descent parser for polynomial expressions in x and y.
//!
//! Accepts sums of terms such as `2*x^4*y^2 - 0.1*x^8*y^4 + 3/2*y^4`, and
//! additionally parenthesised subexpressions with powers and products, so
//! `(x-y)^6 - (x-y)^2*x^5 + x^8` is valid input. Decimal literals become exact
//! rationals.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{BivariatePoly, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("exponent too large at position {pos} (limit {MAX_EXPONENT})")]
    ExponentTooLarge { pos: usize },
}

impl ParseError {
    /// Byte offset in the input where the error was detected.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::NegativeExponent { pos }
            | ParseError::ExponentTooLarge { pos } => *pos,
        }
    }
}

/// Parses an expression into an exact polynomial.
pub fn parse(text: &str) -> Result<BivariatePoly, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let result = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.unexpected());
    }
    Ok(result)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn unexpected(&self) -> ParseError {
        match self.s.get(self.pos) {
            Some(&c) => self.syntax(format!("unexpected character '{}'", c as char)),
            None => self.syntax("unexpected end of input"),
        }
    }

    fn expr(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
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

    fn term(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if starts_atom(c) => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BivariatePoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(b'-') => return Err(ParseError::NegativeExponent { pos: self.pos }),
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(self.syntax("expected a natural-number exponent")),
        }
        let start = self.pos;
        let digits = self.digits();
        let e: u32 = match digits.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(ParseError::ExponentTooLarge { pos: start }),
        };
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<BivariatePoly, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BivariatePoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BivariatePoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(BivariatePoly::constant(self.number()?)),
            None => Err(self.syntax("expected a term")),
            Some(_) => Err(self.unexpected()),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits")
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        let whole: BigInt = self.digits().parse().expect("nonempty digits");
        match self.s.get(self.pos) {
            Some(b'.') => {
                self.pos += 1;
                let frac = self.digits().to_string();
                if frac.is_empty() {
                    return Err(self.syntax("expected digits after '.'"));
                }
                let scale = num_traits::pow(BigInt::from(10), frac.len());
                let f: BigInt = frac.parse().expect("digits");
                Ok(Rational::new(whole * &scale + f, scale))
            }
            Some(b'/') => {
                self.pos += 1;
                let at = self.pos;
                let den = self.digits().to_string();
                if den.is_empty() {
                    return Err(self.syntax("expected a denominator after '/'"));
                }
                let d: BigInt = den.parse().expect("digits");
                if d.is_zero() {
                    return Err(ParseError::Syntax { pos: at, msg: "zero denominator".into() });
                }
                Ok(Rational::new(whole, d))
            }
            _ => Ok(Rational::from_integer(whole)),
        }
    }
}

fn starts_atom(c: u8) -> bool {
    c.is_ascii_digit() || c == b'x' || c == b'y' || c == b'('
}
