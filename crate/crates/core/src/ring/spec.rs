//! Runtime ring descriptions and dynamically typed elements.
//!
//! The engine itself is generic over [`EuclideanDomain`]; `RingSpec` is the
//! value-level description used by input documents, together with checked
//! arithmetic on [`RingElem`].

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::expr::{self, ExprError};
use super::field::is_prime;
use super::{EuclideanDomain, Integers, Poly, PolyRing, PrimeField, Rationals};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operands live in different rings ({0} vs {1})")]
    Mismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a Euclidean ring")]
    NotEuclidean(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("quotients of quotient rings are not supported")]
    NestedQuotient,
    #[error("bad element literal: {0}")]
    Parse(#[from] ExprError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Rationals,
    Prime(u64),
}

/// Description of a supported commutative ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    IntegersMod(BigInt),
    PolyOverField { field: CoeffField, var: String },
    Quotient { base: Box<RingSpec>, modulus: Value },
}

/// Canonical payload of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    RatPoly(Poly<BigRational>),
    FpPoly(Poly<u64>),
}

/// An element together with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElem {
    ring: Arc<RingSpec>,
    value: Value,
}

/// The typed Euclidean ring behind a spec.
#[derive(Clone, Debug, PartialEq)]
pub enum TypedBase {
    Integers(Integers),
    Rational(PolyRing<Rationals>),
    Prime(PolyRing<PrimeField>),
}

impl RingSpec {
    pub fn integers_mod(n: BigInt) -> Result<Self, RingError> {
        if n < BigInt::from(2) {
            return Err(RingError::InvalidModulus(alloc::format!(
                "Z/{n} needs n >= 2"
            )));
        }
        Ok(RingSpec::IntegersMod(n))
    }

    pub fn poly(field: CoeffField, var: &str) -> Result<Self, RingError> {
        if let CoeffField::Prime(p) = field {
            if !is_prime(p) {
                return Err(RingError::NotPrime(p));
            }
        }
        Ok(RingSpec::PolyOverField {
            field,
            var: String::from(var),
        })
    }

    /// `base / (modulus)`; the base must be Euclidean and the modulus a
    /// nonzero non-unit.
    pub fn quotient(base: RingSpec, modulus: &RingElem) -> Result<Self, RingError> {
        if !base.is_euclidean() {
            return Err(match base {
                RingSpec::Quotient { .. } | RingSpec::IntegersMod(_) => RingError::NestedQuotient,
                _ => RingError::NotEuclidean(base.name()),
            });
        }
        if *modulus.ring != base {
            return Err(RingError::Mismatch(base.name(), modulus.ring.name()));
        }
        let typed = base.typed_base().unwrap();
        if typed.is_zero(&modulus.value) || typed.is_unit(&modulus.value) {
            return Err(RingError::InvalidModulus(alloc::format!(
                "{modulus} must be a nonzero non-unit"
            )));
        }
        let modulus = typed.canonical(&modulus.value);
        Ok(RingSpec::Quotient {
            base: Box::new(base),
            modulus,
        })
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self, RingSpec::Integers | RingSpec::PolyOverField { .. })
    }

    /// The Euclidean ring all module computations reduce to.
    pub fn typed_base(&self) -> Option<TypedBase> {
        Some(match self {
            RingSpec::Integers | RingSpec::IntegersMod(_) => TypedBase::Integers(Integers),
            RingSpec::PolyOverField {
                field: CoeffField::Rationals,
                var,
            } => TypedBase::Rational(PolyRing::new(Rationals, var)),
            RingSpec::PolyOverField {
                field: CoeffField::Prime(p),
                var,
            } => TypedBase::Prime(PolyRing::new(PrimeField::new(*p).ok()?, var)),
            RingSpec::Quotient { base, .. } => return base.typed_base(),
        })
    }

    /// Modulus of the algebra over its Euclidean base, if any.
    pub fn modulus(&self) -> Option<Value> {
        match self {
            RingSpec::IntegersMod(n) => Some(Value::Int(n.clone())),
            RingSpec::Quotient { modulus, .. } => Some(modulus.clone()),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            RingSpec::Integers => String::from("Z"),
            RingSpec::IntegersMod(n) => alloc::format!("Z/{n}"),
            RingSpec::PolyOverField { .. } => self.typed_base().unwrap().describe(),
            RingSpec::Quotient { base, modulus } => {
                let typed = base.typed_base().unwrap();
                alloc::format!("{}/({})", base.name(), typed.show(modulus))
            }
        }
    }

    pub fn parse_elem(self: &Arc<Self>, src: &str) -> Result<RingElem, RingError> {
        let base = self
            .typed_base()
            .ok_or_else(|| RingError::NotEuclidean(self.name()))?;
        let raw = base.parse(src)?;
        Ok(RingElem::from_value(self.clone(), raw))
    }

    fn reduce(&self, v: Value) -> Value {
        match self.modulus() {
            Some(m) => {
                let typed = self.typed_base().unwrap();
                typed.div_rem(&v, &m).1
            }
            None => v,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl TypedBase {
    pub fn parse(&self, src: &str) -> Result<Value, ExprError> {
        Ok(match self {
            TypedBase::Integers(r) => Value::Int(expr::parse_elem(r, src)?),
            TypedBase::Rational(r) => Value::RatPoly(expr::parse_elem(r, src)?),
            TypedBase::Prime(r) => Value::FpPoly(expr::parse_elem(r, src)?),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            TypedBase::Integers(r) => r.describe(),
            TypedBase::Rational(r) => r.describe(),
            TypedBase::Prime(r) => r.describe(),
        }
    }

    pub fn show(&self, v: &Value) -> String {
        match (self, v) {
            (TypedBase::Integers(r), Value::Int(a)) => alloc::format!("{}", r.display(a)),
            (TypedBase::Rational(r), Value::RatPoly(a)) => alloc::format!("{}", r.display(a)),
            (TypedBase::Prime(r), Value::FpPoly(a)) => alloc::format!("{}", r.display(a)),
            _ => unreachable!("value does not belong to {}", self.describe()),
        }
    }
}

macro_rules! dispatch {
    ($base:expr, $($v:ident),+ => |$r:ident| $body:expr, $wrap:ident) => {
        match $base {
            TypedBase::Integers($r) => {
                $(let $v = match $v { Value::Int(x) => x, _ => unreachable!() };)+
                $wrap!(Int, $body)
            }
            TypedBase::Rational($r) => {
                $(let $v = match $v { Value::RatPoly(x) => x, _ => unreachable!() };)+
                $wrap!(RatPoly, $body)
            }
            TypedBase::Prime($r) => {
                $(let $v = match $v { Value::FpPoly(x) => x, _ => unreachable!() };)+
                $wrap!(FpPoly, $body)
            }
        }
    };
}

macro_rules! wrap_value {
    ($variant:ident, $e:expr) => {
        Value::$variant($e)
    };
}

macro_rules! wrap_pair {
    ($variant:ident, $e:expr) => {{
        let (a, b) = $e;
        (Value::$variant(a), Value::$variant(b))
    }};
}

macro_rules! wrap_triple {
    ($variant:ident, $e:expr) => {{
        let (a, b, c) = $e;
        (Value::$variant(a), Value::$variant(b), Value::$variant(c))
    }};
}

macro_rules! wrap_plain {
    ($variant:ident, $e:expr) => {
        $e
    };
}

impl TypedBase {
    fn add(&self, a: &Value, b: &Value) -> Value {
        dispatch!(self, a, b => |r| r.add(a, b), wrap_value)
    }

    fn mul(&self, a: &Value, b: &Value) -> Value {
        dispatch!(self, a, b => |r| r.mul(a, b), wrap_value)
    }

    fn neg(&self, a: &Value) -> Value {
        dispatch!(self, a => |r| r.neg(a), wrap_value)
    }

    fn canonical(&self, a: &Value) -> Value {
        dispatch!(self, a => |r| r.canonical(a), wrap_value)
    }

    fn is_zero(&self, a: &Value) -> bool {
        dispatch!(self, a => |r| r.is_zero(a), wrap_plain)
    }

    fn is_unit(&self, a: &Value) -> bool {
        dispatch!(self, a => |r| r.is_unit(a), wrap_plain)
    }

    fn div_rem(&self, a: &Value, b: &Value) -> (Value, Value) {
        dispatch!(self, a, b => |r| r.div_rem(a, b), wrap_pair)
    }

    fn xgcd(&self, a: &Value, b: &Value) -> (Value, Value, Value) {
        dispatch!(self, a, b => |r| r.xgcd(a, b), wrap_triple)
    }
}

impl RingElem {
    fn from_value(ring: Arc<RingSpec>, raw: Value) -> Self {
        let value = ring.reduce(raw);
        RingElem { ring, value }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn integer(ring: &Arc<RingSpec>, n: i64) -> Result<Self, RingError> {
        ring.parse_elem(&alloc::format!("{n}"))
    }

    fn check(&self, other: &Self) -> Result<TypedBase, RingError> {
        if self.ring != other.ring {
            return Err(RingError::Mismatch(self.ring.name(), other.ring.name()));
        }
        Ok(self.ring.typed_base().unwrap())
    }

    fn same(&self, value: Value) -> Self {
        RingElem::from_value(self.ring.clone(), value)
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        let r = self.check(other)?;
        Ok(self.same(r.add(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        let r = self.check(other)?;
        Ok(self.same(r.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Self {
        let r = self.ring.typed_base().unwrap();
        self.same(r.neg(&self.value))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.typed_base().unwrap().is_zero(&self.value)
    }

    /// Euclidean division `self = q·other + r`.
    pub fn divmod(&self, other: &Self) -> Result<(Self, Self), RingError> {
        let r = self.check(other)?;
        if !self.ring.is_euclidean() {
            return Err(RingError::NotEuclidean(self.ring.name()));
        }
        if other.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let (q, rem) = r.div_rem(&self.value, &other.value);
        Ok((self.same(q), self.same(rem)))
    }

    /// `(g, u, v)` with `g = u·self + v·other`, `g` the canonical associate.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self), RingError> {
        let r = self.check(other)?;
        if !self.ring.is_euclidean() {
            return Err(RingError::NotEuclidean(self.ring.name()));
        }
        let (g, u, v) = r.xgcd(&self.value, &other.value);
        Ok((self.same(g), self.same(u), self.same(v)))
    }

    /// Canonical representative; idempotent.
    pub fn canonical(&self) -> Self {
        self.same(self.value.clone())
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.ring.typed_base().unwrap();
        f.write_str(&r.show(&self.value))
    }
}

impl Value {
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Value::Int(n) => Some(n),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ring(spec: RingSpec) -> Arc<RingSpec> {
        Arc::new(spec)
    }

    #[test]
    fn divmod_over_integers() {
        let z = ring(RingSpec::Integers);
        let a = z.parse_elem("7").unwrap();
        let b = z.parse_elem("3").unwrap();
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!((q.to_string(), r.to_string()), ("2".into(), "1".into()));
        let zero = z.parse_elem("0").unwrap();
        assert_eq!(a.divmod(&zero), Err(RingError::DivisionByZero));
    }

    #[test]
    fn char_two_square() {
        let f2x = ring(RingSpec::poly(CoeffField::Prime(2), "x").unwrap());
        let a = f2x.parse_elem("x+1").unwrap();
        assert_eq!(a.mul(&a).unwrap().to_string(), "x^2+1");
    }

    #[test]
    fn quotient_rings_are_not_euclidean() {
        let z = RingSpec::Integers;
        let zz = ring(z.clone());
        let m = zz.parse_elem("8").unwrap();
        let q = ring(RingSpec::quotient(z, &m).unwrap());
        let a = q.parse_elem("11").unwrap();
        assert_eq!(a.to_string(), "3");
        let b = q.parse_elem("-1").unwrap();
        assert_eq!(b.to_string(), "7");
        assert!(matches!(a.divmod(&b), Err(RingError::NotEuclidean(_))));
        assert!(matches!(a.xgcd(&b), Err(RingError::NotEuclidean(_))));
        assert!(matches!(
            RingSpec::quotient((*q).clone(), &a),
            Err(RingError::NestedQuotient)
        ));
    }

    #[test]
    fn invalid_specs() {
        assert!(RingSpec::integers_mod(BigInt::from(1)).is_err());
        assert!(RingSpec::poly(CoeffField::Prime(4), "x").is_err());
        let z = RingSpec::Integers;
        let zz = ring(z.clone());
        let unit = zz.parse_elem("-1").unwrap();
        assert!(RingSpec::quotient(z, &unit).is_err());
    }

    #[test]
    fn mismatch_is_reported() {
        let z = ring(RingSpec::Integers);
        let z8 = ring(RingSpec::integers_mod(BigInt::from(8)).unwrap());
        let a = z.parse_elem("1").unwrap();
        let b = z8.parse_elem("1").unwrap();
        assert!(matches!(a.add(&b), Err(RingError::Mismatch(_, _))));
    }

    #[test]
    fn residues_are_canonical() {
        let z8 = ring(RingSpec::integers_mod(BigInt::from(8)).unwrap());
        let a = z8.parse_elem("-13").unwrap();
        assert_eq!(a.value().as_int(), Some(&BigInt::from(3)));
        assert_eq!(a.canonical(), a);
    }
}
