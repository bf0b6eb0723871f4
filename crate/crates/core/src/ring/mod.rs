//! Exact commutative rings.
//!
//! Every module computation in this crate reduces to a Euclidean base ring
//! (the integers or a univariate polynomial ring over `Q` or `F_p`). Rings are
//! passed around as cheap context values and elements carry no back-pointer
//! to their ring, in the style of a ring store.

mod field;
mod integers;
mod poly;
pub mod expr;
pub mod spec;

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

pub use field::{Field, PrimeField, Rationals};
pub use integers::Integers;
pub use poly::{Poly, PolyRing};
pub use spec::{CoeffField, RingElem, RingError, RingSpec};

/// A Euclidean domain with canonical associates.
pub trait EuclideanDomain: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + fmt::Debug;
    /// Euclidean size used for pivot selection; only compared between nonzero elements.
    type Size: Ord;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn size(&self, a: &Self::Elem) -> Self::Size;

    /// Euclidean division; `b` must be nonzero. The remainder is zero or
    /// strictly smaller than `b`, and is itself canonical for the ring
    /// (nonnegative for integers).
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Returns `(u, u⁻¹)` with `u` a unit such that `u·a` is the canonical
    /// associate of `a`. For zero this is `(1, 1)`.
    fn canonical_unit(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// The adjoined variable, for polynomial rings.
    fn variable(&self) -> Option<Self::Elem> {
        None
    }

    fn variable_name(&self) -> Option<&str> {
        None
    }

    /// `a / n` for a nonzero integer `n`, when the coefficients form a field.
    fn div_by_int(&self, _a: &Self::Elem, _n: &BigInt) -> Option<Self::Elem> {
        None
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    fn describe(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn canonical(&self, a: &Self::Elem) -> Self::Elem {
        let (u, _) = self.canonical_unit(a);
        self.mul(&u, a)
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Exact quotient `a / b` if `b` divides `a`.
    fn divides(&self, b: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(b) {
            return if self.is_zero(a) { Some(self.zero()) } else { None };
        }
        let (q, r) = self.div_rem(a, b);
        self.is_zero(&r).then_some(q)
    }

    /// Extended gcd: `(g, u, v)` with `g = u·a + v·b` and `g` canonical.
    fn xgcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        let (u, _) = self.canonical_unit(&r0);
        (self.mul(&u, &r0), self.mul(&u, &s0), self.mul(&u, &t0))
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.xgcd(a, b).0
    }

    fn display<'a>(&'a self, a: &'a Self::Elem) -> Display<'a, Self> {
        Display { ring: self, elem: a }
    }
}

/// Formats an element through its ring.
pub struct Display<'a, R: EuclideanDomain + ?Sized> {
    ring: &'a R,
    elem: &'a R::Elem,
}

impl<R: EuclideanDomain> fmt::Display for Display<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ring.fmt_elem(self.elem, f)
    }
}
