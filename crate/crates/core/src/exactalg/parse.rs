//! Parser for rational expressions in `t1, t2, h, u, w`.
//!
//! Accepts integers, the five variables, `+ - * / ^` with integer (possibly
//! negative) exponents, and parentheses. Everything printed by
//! [`FieldElem`]'s `Display` parses back to an equal element.

use num_bigint::BigInt;

use super::field::FieldElem;
use super::monomial::Var;
use super::poly::ZPoly;
use crate::error::{Error, Result};

pub fn parse(input: &str) -> Result<FieldElem> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<FieldElem> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElem> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc * rhs
            } else {
                acc.try_div(&rhs).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElem> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElem> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let neg = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ => false,
            };
            let e = self.integer()?;
            let e: i32 = e
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| Error::Parse {
                pos: at,
                msg: "negative power of zero".into(),
            });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<FieldElem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(FieldElem::from_zpoly(ZPoly::constant(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match Var::from_name(name) {
                    Some(v) => Ok(FieldElem::var(v)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let a = parse("1+2*t1^2").unwrap();
        let b = parse("(2*(t1*t1))+1").unwrap();
        assert!(a.field_eq(&b));
        assert!(parse("-t1^2")
            .unwrap()
            .field_eq(&parse("0-(t1^2)").unwrap()));
    }

    #[test]
    fn negative_exponent() {
        let a = parse("t1^-2*t2").unwrap();
        assert!(a.field_eq(&parse("t2/(t1*t1)").unwrap()));
    }

    #[test]
    fn errors_report_position() {
        match parse("1+x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("(1+t1").is_err());
        assert!(parse("1/(t1-t1)").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "(h*(1+u)+w*(1+h^2*u))/(h+w)",
            "1/2*t1 - 3/7*t2^3*w + 5",
            "(1-t1^2)*(1-t2/t1)",
            "0",
            "-1/(2-4*t1)",
        ] {
            let a = parse(s).unwrap();
            let b = parse(&a.to_string()).unwrap();
            assert!(a.field_eq(&b), "{s} -> {a}");
            assert_eq!(a.to_string(), b.to_string());
        }
    }
}
