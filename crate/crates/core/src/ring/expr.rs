//! Element literals: a small recursive-descent grammar for ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/' int | <juxtaposition>) factor)*
//! factor := '-' factor | power
//! power  := atom ('^' int)?
//! atom   := int | ident | '(' expr ')'
//! ```
//!
//! Only integer literals and the ring's variable are atoms; division is only
//! by a nonzero integer literal and only where coefficients form a field.

use alloc::boxed::Box;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::EuclideanDomain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, BigInt),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unexpected {found} at offset {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("unknown symbol `{0}`; only integer literals and the ring variable are allowed")]
    UnknownSymbol(String),
    #[error("division by {0} is not available in this ring")]
    Division(BigInt),
    #[error("exponent out of range at offset {0}")]
    Exponent(usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&mut self) -> ExprError {
        let found = match self.peek() {
            Some(c) => alloc::format!("`{}`", c as char),
            None => "end of input".to_string(),
        };
        ExprError::Unexpected {
            pos: self.pos,
            found,
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    match self.integer() {
                        Some(n) => lhs = Expr::Div(Box::new(lhs), n),
                        None => {
                            self.pos = start;
                            return Err(self.unexpected());
                        }
                    }
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.integer().ok_or_else(|| self.unexpected())?;
            let e = e.to_u32().ok_or(ExprError::Exponent(at))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer().unwrap())),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::Var(name.to_string()))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        BigInt::parse_bytes(digits.as_bytes(), 10)
    }
}

/// Parses an element literal into an expression tree.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Evaluates an expression in a ring.
pub fn eval<R: EuclideanDomain>(ring: &R, e: &Expr) -> Result<R::Elem, ExprError> {
    Ok(match e {
        Expr::Int(n) => ring.from_int(n),
        Expr::Var(name) => match (ring.variable_name(), ring.variable()) {
            (Some(v), Some(x)) if v == name => x,
            _ => return Err(ExprError::UnknownSymbol(name.clone())),
        },
        Expr::Neg(a) => ring.neg(&eval(ring, a)?),
        Expr::Add(a, b) => ring.add(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Sub(a, b) => ring.sub(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Mul(a, b) => ring.mul(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Div(a, n) => ring
            .div_by_int(&eval(ring, a)?, n)
            .ok_or_else(|| ExprError::Division(n.clone()))?,
        Expr::Pow(a, k) => ring.pow(&eval(ring, a)?, u64::from(*k)),
    })
}

/// Parses and evaluates an element literal.
pub fn parse_elem<R: EuclideanDomain>(ring: &R, src: &str) -> Result<R::Elem, ExprError> {
    eval(ring, &parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PolyRing, PrimeField, Rationals};

    #[test]
    fn integers() {
        assert_eq!(parse_elem(&Integers, "2*(3-5)^3").unwrap(), BigInt::from(-16));
        assert_eq!(parse_elem(&Integers, "-7").unwrap(), BigInt::from(-7));
        assert!(matches!(
            parse_elem(&Integers, "p"),
            Err(ExprError::UnknownSymbol(_))
        ));
        assert!(matches!(
            parse_elem(&Integers, "1/2"),
            Err(ExprError::Division(_))
        ));
    }

    #[test]
    fn polynomials() {
        let r = PolyRing::new(Rationals, "x");
        let p = parse_elem(&r, "x^2+1").unwrap();
        assert_eq!(p, r.add(&r.var_pow(2), &r.one()));
        let q = parse_elem(&r, "2x(x - 1)/4").unwrap();
        let expect = parse_elem(&r, "1/2*x^2-1/2*x").unwrap();
        assert_eq!(q, expect);
        let f2 = PolyRing::new(PrimeField::new(2).unwrap(), "t");
        assert_eq!(parse_elem(&f2, "(t+1)^2").unwrap(), parse_elem(&f2, "t^2+1").unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse("x^").unwrap_err();
        assert!(matches!(err, ExprError::Unexpected { pos: 2, .. }));
        assert!(parse("(x+1").is_err());
        assert!(parse("x+1)").is_err());
    }
}
