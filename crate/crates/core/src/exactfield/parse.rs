//! Parser for exact scalar strings such as `(-3/2)*z^2 + 1/4`, where `z`
//! denotes the primitive root ζ_m of the document's conductor.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::cyclotomic::CycNum;
use super::field::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at offset {pos} in {input:?}")]
    Unexpected {
        input: String,
        pos: usize,
        found: char,
    },
    #[error("unexpected end of input in {0:?}")]
    Eof(String),
    #[error("division by zero in {0:?}")]
    DivByZero(String),
    #[error("bad rational {0:?}")]
    BadRational(String),
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    m: u32,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.src[self.pos..].chars().next() {
            Some(c) => ParseError::Unexpected {
                input: self.src.to_string(),
                pos: self.pos,
                found: c,
            },
            None => ParseError::Eof(self.src.to_string()),
        }
    }

    fn expr(&mut self) -> Result<CycNum, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = Scalar::add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = Scalar::sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycNum, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = Scalar::mul(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    let inv = f
                        .inv()
                        .ok_or_else(|| ParseError::DivByZero(self.src.to_string()))?;
                    acc = Scalar::mul(&acc, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CycNum, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Scalar::neg(&self.unary()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CycNum, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| ParseError::BadRational(self.src.to_string()))?;
            let p = base.pow(e);
            if neg {
                return p
                    .inv()
                    .ok_or_else(|| ParseError::DivByZero(self.src.to_string()));
            }
            return Ok(p);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        self.src[start..self.pos]
            .parse::<BigInt>()
            .map_err(|_| ParseError::BadRational(self.src[start..self.pos].to_string()))
    }

    fn atom(&mut self) -> Result<CycNum, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(CycNum::zeta(self.m))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(CycNum::rational(BigRational::from_integer(n)))
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse an exact scalar expression in ℚ(ζ_m).
pub fn parse_cyc(s: &str, m: u32) -> Result<CycNum, ParseError> {
    let mut p = Parser {
        src: s,
        bytes: s.as_bytes(),
        pos: 0,
        m,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(v)
}

/// Parse a plain rational such as `-3/2`.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    if s.contains('z') {
        return Err(ParseError::BadRational(s.to_string()));
    }
    let v = parse_cyc(s, 1)?;
    v.as_rational()
        .cloned()
        .ok_or_else(|| ParseError::BadRational(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_form() {
        let v = parse_cyc("(-3/2)*z^2 + 1/4", 12).unwrap();
        let z = CycNum::zeta(12);
        let expect = Scalar::add(
            &Scalar::mul(&CycNum::frac(-3, 2), &z.pow(2)),
            &CycNum::frac(1, 4),
        );
        assert_eq!(v, expect);
    }

    #[test]
    fn parses_nested_and_negative_powers() {
        let v = parse_cyc("-(1 + z)^2 / 2 + z^-1*z", 4).unwrap();
        // -(1+i)^2/2 + 1 = -(2i)/2 + 1 = 1 - i
        assert_eq!(v, Scalar::sub(&CycNum::int(1), &CycNum::imag()));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_cyc("1 + ", 12).is_err());
        assert!(parse_cyc("1/0", 12).is_err());
        assert!(parse_cyc("y", 12).is_err());
        assert!(parse_rational("z").is_err());
        assert_eq!(parse_rational("-6/4").unwrap(), BigRational::new((-3).into(), 2.into()));
    }
}
