//! Recursive-descent parser for ordinal expressions.
//!
//! ```text
//! expr  := term ("+" term)*
//! term  := "w" power? mult? | nat
//! power := "^" ( nat | "(" expr ")" )
//! mult  := "*" nat
//! nat   := [0-9]+
//! ```
//!
//! Whitespace is insignificant and `ω` is accepted for `w`. The result is
//! normalized to Cantor normal form.

use thiserror::Error;

use super::Ordinal;

/// Maximum nesting of parenthesized exponents.
pub const MAX_EXPONENT_DEPTH: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at position {position}, expected {expected}")]
    Unexpected {
        position: usize,
        found: char,
        expected: &'static str,
    },
    #[error("unexpected end of input at position {position}, expected {expected}")]
    UnexpectedEnd {
        position: usize,
        expected: &'static str,
    },
    #[error("coefficient 0 at position {position}")]
    ZeroCoefficient { position: usize },
    #[error("number at position {position} does not fit in 64 bits")]
    NumberOverflow { position: usize },
    #[error("exponent nesting deeper than {MAX_EXPONENT_DEPTH} at position {position}")]
    ExponentTooDeep { position: usize },
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let value = p.expr(0)?;
    p.skip_ws();
    match p.peek() {
        None => Ok(value),
        Some(c) => Err(ParseError::Unexpected {
            position: p.pos,
            found: c,
            expected: "'+' or end of input",
        }),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(found) => ParseError::Unexpected {
                position: self.pos,
                found,
                expected,
            },
            None => ParseError::UnexpectedEnd {
                position: self.pos,
                expected,
            },
        }
    }

    fn expr(&mut self, depth: usize) -> Result<Ordinal, ParseError> {
        let mut acc = self.term(depth)?;
        while self.eat('+') {
            let rhs = self.term(depth)?;
            acc = acc.add(&rhs);
        }
        Ok(acc)
    }

    fn term(&mut self, depth: usize) -> Result<Ordinal, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('w' | 'ω') => {
                self.pos += 1;
                let exponent = if self.eat('^') {
                    self.power(depth)?
                } else {
                    Ordinal::one()
                };
                let coefficient = if self.eat('*') {
                    let at = self.pos;
                    let c = self.nat()?;
                    if c == 0 {
                        return Err(ParseError::ZeroCoefficient { position: at });
                    }
                    c
                } else {
                    1
                };
                Ok(Ordinal::omega_power(exponent, coefficient))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from(self.nat()?)),
            _ => Err(self.fail("'w' or a number")),
        }
    }

    fn power(&mut self, depth: usize) -> Result<Ordinal, ParseError> {
        if self.eat('(') {
            if depth + 1 > MAX_EXPONENT_DEPTH {
                return Err(ParseError::ExponentTooDeep { position: self.pos });
            }
            let e = self.expr(depth + 1)?;
            if !self.eat(')') {
                return Err(self.fail("')'"));
            }
            Ok(e)
        } else {
            Ok(Ordinal::from(self.nat()?))
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| ParseError::NumberOverflow { position: start })
    }
}
