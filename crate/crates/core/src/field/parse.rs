//! Recursive-descent parser for the textual scalar format.

use num_bigint::BigInt;

use super::{Field, FieldError, Scalar};

struct Parser<'a> {
    field: &'a Field,
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse(field: &Field, s: &str) -> Result<Scalar, FieldError> {
    let mut p = Parser {
        field,
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> FieldError {
        FieldError::Parse(format!("{msg} at offset {}", self.pos))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.checked_mul(&self.factor()?)?;
            } else if self.eat(b'/') {
                acc = acc.checked_div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, FieldError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let n: i32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -n } else { n });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, FieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Scalar, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.field.bigint(&n))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(self.field.q().clone())
            }
            Some(b'r') if self.src[self.pos..].starts_with(b"rho") => {
                self.pos += 3;
                Ok(self.field.rho().clone())
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}
