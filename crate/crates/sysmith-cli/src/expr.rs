//! Entry-expression parser: `+`, `-`, `*`, `/`, `^` with nonnegative
//! integer exponents, parentheses, integer literals, and the variable `z`.
//! Evaluation is exact over the fraction field of the selected ring;
//! division never truncates.  Errors carry the byte offset they were
//! raised at.

use std::fmt;

use sysmith::{Frac, Poly, ProperRat, RingElem, RingTag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "byte {}: {}", self.offset, self.msg)
    }
}

/// The result of parsing one entry: a ring element when the value landed in
/// the ring, otherwise a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedEntry {
    Ring(RingElem),
    Frac(Frac),
}

impl ParsedEntry {
    pub fn to_frac(&self) -> Frac {
        match self {
            ParsedEntry::Ring(e) => Frac::from_ring(e.clone()),
            ParsedEntry::Frac(f) => f.clone(),
        }
    }

    pub fn is_ring(&self) -> bool {
        matches!(self, ParsedEntry::Ring(_))
    }
}

/// Parse and exactly evaluate one entry expression in the given ring.
pub fn parse_entry(text: &str, tag: RingTag) -> Result<ParsedEntry, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        tag,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    if value.is_ring_valued() {
        Ok(ParsedEntry::Ring(
            value.to_ring().expect("ring-valued fraction"),
        ))
    } else {
        Ok(ParsedEntry::Frac(value))
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    tag: RingTag,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos - 1;
                let rhs = self.unary()?;
                acc = acc.div(&rhs).map_err(|_| ParseError {
                    offset: at,
                    msg: "division by zero".to_string(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Frac, ParseError> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    // power := atom ('^' uint)*
    fn power(&mut self) -> Result<Frac, ParseError> {
        let mut base = self.atom()?;
        while self.eat(b'^') {
            let at = self.pos;
            let e = self.exponent()?;
            if base.is_zero() && e == 0 {
                return Err(ParseError {
                    offset: at,
                    msg: "0^0 is undefined".to_string(),
                });
            }
            let mut acc = Frac::one(self.tag);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            base = acc;
        }
        Ok(base)
    }

    // atom := uint | 'z' | '(' expr ')'
    fn atom(&mut self) -> Result<Frac, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'z') => {
                self.pos += 1;
                self.variable()
            }
            Some(b) if b.is_ascii_digit() => Ok(Frac::from_ring(self.number()?)),
            Some(_) => Err(self.err("expected a number, 'z', or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// The variable as a fraction-field value: a polynomial over `Q[z]`, and
    /// `1 / (1/z)` over the proper rationals.  The integers have no variable.
    fn variable(&mut self) -> Result<Frac, ParseError> {
        match self.tag {
            RingTag::Z => Err(ParseError {
                offset: self.pos - 1,
                msg: "variable z is not available in ring Z".to_string(),
            }),
            RingTag::Qz => Ok(Frac::from_ring(RingElem::Poly(Poly::var()))),
            RingTag::Rpr => Ok(Frac::new(
                RingElem::one(RingTag::Rpr),
                RingElem::Proper(ProperRat::inv_z_pow(1)),
            )
            .expect("1/z is nonzero")),
        }
    }

    /// An unsigned decimal literal, built digit by digit in exact ring
    /// arithmetic so its size is unbounded.
    fn number(&mut self) -> Result<RingElem, ParseError> {
        let ten = RingElem::from_i64(self.tag, 10);
        let mut acc = RingElem::zero(self.tag);
        let start = self.pos;
        while let Some(b) = self.bytes.get(self.pos).copied() {
            if !b.is_ascii_digit() {
                break;
            }
            let digit = RingElem::from_i64(self.tag, i64::from(b - b'0'));
            acc = acc.mul(&ten).add(&digit);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a digit"));
        }
        Ok(acc)
    }

    /// The exponent after `^`: a plain nonnegative integer literal.
    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(b) = self.bytes.get(self.pos).copied() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u32::from(b - b'0')))
                .ok_or_else(|| ParseError {
                    offset: start,
                    msg: "exponent too large".to_string(),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a nonnegative integer exponent"));
        }
        Ok(value)
    }
}
