use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::RingError;

/// Coefficient field of a polynomial ring.
pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    /// Whether the element prints as a plain signed integer (no `/`).
    fn is_integral(&self, a: &Self::Elem) -> bool;
    fn describe(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The rational numbers, as fractions in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn fmt_elem(&self, a: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if a.denom().is_one() {
            write!(f, "{}", a.numer())
        } else {
            write!(f, "{}/{}", a.numer(), a.denom())
        }
    }

    fn is_integral(&self, a: &BigRational) -> bool {
        a.denom().is_one()
    }

    fn describe(&self) -> String {
        String::from("Q")
    }
}

/// The prime field `F_p`, residues stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let mut e = self.p - 2;
        let mut base = *a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    fn fmt_elem(&self, a: &u64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }

    fn is_integral(&self, _a: &u64) -> bool {
        true
    }

    fn describe(&self) -> String {
        alloc::format!("F{}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn fermat_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }
}
