use alloc::string::String;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::EuclideanDomain;

/// The ring of arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl EuclideanDomain for Integers {
    type Elem = BigInt;
    type Size = BigUint;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }

    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        assert!(!b.is_zero(), "integer division by zero");
        // remainder in [0, |b|)
        let (mut q, mut r) = a.div_mod_floor(b);
        if r.is_negative() {
            r += b.abs();
            q += BigInt::one();
        }
        (q, r)
    }

    fn canonical_unit(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (-BigInt::one(), -BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        }
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn fmt_elem(&self, a: &BigInt, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }

    fn describe(&self) -> String {
        String::from("Z")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn grade_school_division() {
        assert_eq!(Integers.div_rem(&z(7), &z(3)), (z(2), z(1)));
        assert_eq!(Integers.div_rem(&z(-7), &z(3)), (z(-3), z(2)));
        assert_eq!(Integers.div_rem(&z(7), &z(-3)), (z(-2), z(1)));
        assert_eq!(Integers.div_rem(&z(-7), &z(-3)), (z(3), z(2)));
    }

    #[test]
    fn xgcd_six_four() {
        assert_eq!(Integers.xgcd(&z(6), &z(4)), (z(2), z(1), z(-1)));
    }

    #[test]
    fn xgcd_with_zero() {
        let (g, u, v) = Integers.xgcd(&z(-9), &z(0));
        assert_eq!(g, z(9));
        assert!(Integers.is_unit(&u));
        assert_eq!(v, z(0));
    }
}
