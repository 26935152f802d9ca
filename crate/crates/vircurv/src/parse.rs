//! Parser for the textual field grammar.
//!
//! ```text
//! expr      := [sign] term (sign term)*
//! term      := scalar '*' primitive | primitive
//! primitive := ("cos" | "sin") '(' [mode] 't' ')' | scalar
//! scalar    := digits ['/' digits]
//! ```
//!
//! Whitespace is insignificant, `t` abbreviates `1t`, and repeated modes
//! accumulate additively. Signs belong to the sum, so `-1/2*sin(3t)`
//! negates the whole term.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::trig::TrigField;

/// Parse failure with the 0-based character offset of the offending
/// position and the token class that was expected there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: expected {expected}, found {found}")]
pub struct FieldParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

enum Primitive {
    Cos(u32),
    Sin(u32),
    Const(Scalar),
}

impl Parser {
    fn new(input: &str) -> Self {
        Parser {
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn fail(&self, expected: impl fmt::Display) -> FieldParseError {
        self.fail_at(self.pos, expected)
    }

    fn fail_at(&self, offset: usize, expected: impl fmt::Display) -> FieldParseError {
        FieldParseError {
            offset,
            expected: expected.to_string(),
            found: match self.chars.get(offset) {
                Some(c) => format!("{c:?}"),
                None => "end of input".to_string(),
            },
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), FieldParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(format!("{ch:?}")))
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(self.chars[start..self.pos].iter().collect())
        }
    }

    /// Unsigned scalar literal `p` or `p/q`.
    fn scalar(&mut self) -> Result<Scalar, FieldParseError> {
        let numer = self.digits().ok_or_else(|| self.fail("digit"))?;
        if self.peek() != Some('/') {
            return Ok(format!("{numer}/1").parse().expect("digits form a scalar"));
        }
        self.pos += 1;
        let den_start = self.pos;
        let denom = self.digits().ok_or_else(|| self.fail("digit"))?;
        let text = format!("{numer}/{denom}");
        text.parse()
            .map_err(|_| self.fail_at(den_start, "nonzero denominator"))
    }

    fn primitive(&mut self) -> Result<Primitive, FieldParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Primitive::Const(self.scalar()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let name_start = self.pos;
                let mut name = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                    name.push(self.bump().unwrap());
                }
                let is_cos = match name.as_str() {
                    "cos" => true,
                    "sin" => false,
                    _ => return Err(self.fail_at(name_start, "function name cos or sin")),
                };
                self.skip_ws();
                self.expect('(')?;
                self.skip_ws();
                let mode_start = self.pos;
                let mode = match self.digits() {
                    None => 1,
                    Some(d) => d
                        .parse::<u32>()
                        .map_err(|_| self.fail_at(mode_start, "a smaller mode"))?,
                };
                if !is_cos && mode == 0 {
                    return Err(self.fail_at(mode_start, "a nonzero mode for sin"));
                }
                if self.peek() != Some('t') {
                    return Err(self.fail("'t'"));
                }
                self.pos += 1;
                self.skip_ws();
                self.expect(')')?;
                Ok(if is_cos {
                    Primitive::Cos(mode)
                } else {
                    Primitive::Sin(mode)
                })
            }
            _ => Err(self.fail("a term (scalar, cos, or sin)")),
        }
    }

    fn term(&mut self, out: &mut TrigField, negate: bool) -> Result<(), FieldParseError> {
        self.skip_ws();
        let mut coeff = if negate {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        let prim = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let s = self.scalar()?;
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.pos += 1;
                    self.skip_ws();
                    coeff = coeff * s;
                    self.primitive()?
                } else {
                    Primitive::Const(s)
                }
            }
            _ => self.primitive()?,
        };
        match prim {
            Primitive::Cos(k) => out.add_cos(k, &coeff),
            Primitive::Sin(k) => out.add_sin(k, &coeff),
            Primitive::Const(s) => out.add_cos(0, &(coeff * s)),
        }
        Ok(())
    }
}

/// Parses the field grammar; duplicate modes accumulate.
pub fn parse_field(input: &str) -> Result<TrigField, FieldParseError> {
    let mut p = Parser::new(input);
    let mut out = TrigField::zero();
    p.skip_ws();
    let mut negate = false;
    if let Some(c @ ('+' | '-')) = p.peek() {
        negate = c == '-';
        p.pos += 1;
    }
    p.term(&mut out, negate)?;
    loop {
        p.skip_ws();
        match p.peek() {
            None => return Ok(out),
            Some('+') => {
                p.pos += 1;
                p.term(&mut out, false)?;
            }
            Some('-') => {
                p.pos += 1;
                p.term(&mut out, true)?;
            }
            Some(_) => return Err(p.fail("'+' or '-'")),
        }
    }
}
