//! Recursive-descent reader for the textual rational-function format:
//! integers, `q`, `x_i`, `^` with a (possibly negative) integer exponent,
//! `*`, `/`, `+`, `-` and parentheses.

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use super::ArithError;

pub(crate) fn parse_rational(s: &str, nvars: usize) -> Result<RationalFunction, ArithError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, nvars };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ArithError {
        ArithError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<RationalFunction, ArithError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ArithError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.try_mul(&self.unary()?)?;
            } else if self.eat(b'/') {
                acc = acc.try_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ArithError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ArithError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = if self.eat(b'(') {
                let e = self.signed_int()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')' after exponent"));
                }
                e
            } else {
                self.signed_int()?
            };
            let e = i32::try_from(e).map_err(|_| self.error("exponent out of range"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, ArithError> {
        let neg = self.eat(b'-');
        let digits = self.digits().ok_or_else(|| self.error("expected integer exponent"))?;
        let v: i64 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<RationalFunction, ArithError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(RationalFunction::q_pow(self.nvars, 1))
            }
            Some(b'x') => {
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b'_') {
                    return Err(self.error("expected '_' after 'x'"));
                }
                self.pos += 1;
                let at = self.pos;
                let idx: usize = self
                    .digits()
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| self.error("expected variable index"))?;
                if idx == 0 || idx > self.nvars {
                    return Err(ArithError::Parse {
                        pos: at,
                        msg: format!("variable x_{idx} outside x_1..x_{}", self.nvars),
                    });
                }
                Ok(RationalFunction::from_monomial(self.nvars, Monomial::x(idx, 1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let v: BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
                Ok(RationalFunction::from_poly(Poly::constant(self.nvars, v)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_position() {
        match parse_rational("x_1 + x_3", 2) {
            Err(ArithError::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
        assert!(parse_rational("(q", 0).is_err());
        assert!(parse_rational("q q", 0).is_err());
        assert!(parse_rational("1/0", 0).is_err());
    }

    #[test]
    fn exponents() {
        let a = parse_rational("q^-2 * x_1^(3)", 1).unwrap();
        assert_eq!(a, RationalFunction::from_monomial(1, Monomial::new(-2, &[3])));
    }
}
