use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use super::{EuclideanDomain, Field};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C> Poly<C> {
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `F[var]` for a coefficient field `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    var: Arc<str>,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, var: &str) -> Self {
        Self {
            field,
            var: Arc::from(var),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Builds a polynomial from coefficients (lowest degree first), trimming zeros.
    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c · var^k`
    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); k + 1];
        coeffs[k] = c;
        self.from_coeffs(coeffs)
    }

    /// `var^k`
    pub fn var_pow(&self, k: usize) -> Poly<F::Elem> {
        self.monomial(self.field.one(), k)
    }

    pub fn leading(&self, a: &Poly<F::Elem>) -> Option<F::Elem> {
        a.coeffs.last().cloned()
    }

    /// Substitutes `var ↦ var^factor`.
    pub fn inflate(&self, a: &Poly<F::Elem>, factor: usize) -> Poly<F::Elem> {
        assert!(factor >= 1);
        if a.is_zero() {
            return a.clone();
        }
        let mut coeffs = vec![self.field.zero(); (a.coeffs.len() - 1) * factor + 1];
        for (k, c) in a.coeffs.iter().enumerate() {
            coeffs[k * factor] = c.clone();
        }
        self.from_coeffs(coeffs)
    }

    fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }
}

impl<F: Field> EuclideanDomain for PolyRing<F> {
    type Elem = Poly<F::Elem>;
    type Size = usize;

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.field.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&zero);
                let y = b.coeffs.get(i).unwrap_or(&zero);
                self.field.add(x, y)
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.field.mul(x, y);
                coeffs[i + j] = self.field.add(&coeffs[i + j], &t);
            }
        }
        self.from_coeffs(coeffs)
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.field.from_int(n))
    }

    fn size(&self, a: &Self::Elem) -> usize {
        a.degree().unwrap_or(0)
    }

    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let db = b.degree().expect("polynomial division by zero");
        let lead_inv = self.field.inv(b.coeffs.last().unwrap());
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[k + db], &lead_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                let t = self.field.mul(&c, bc);
                rem[k + i] = self.field.sub(&rem[k + i], &t);
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (self.from_coeffs(quot), self.from_coeffs(rem))
    }

    fn canonical_unit(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        match a.coeffs.last() {
            None => (self.one(), self.one()),
            Some(lead) => (
                self.constant(self.field.inv(lead)),
                self.constant(lead.clone()),
            ),
        }
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.degree() == Some(0)
    }

    fn variable(&self) -> Option<Self::Elem> {
        Some(self.var_pow(1))
    }

    fn variable_name(&self) -> Option<&str> {
        Some(&self.var)
    }

    fn div_by_int(&self, a: &Self::Elem, n: &BigInt) -> Option<Self::Elem> {
        let c = self.field.from_int(n);
        if self.field.is_zero(&c) {
            return None;
        }
        Some(self.scale(a, &self.field.inv(&c)))
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if a.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in a.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let neg_c = self.field.neg(c);
            // print "-" for coefficients whose negation looks simpler (Q only)
            let negative = alloc::format!("{}", FieldDisplay(&self.field, c)).starts_with('-');
            let (sign, mag) = if negative { ("-", &neg_c) } else { ("+", c) };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let unit = self.field.is_one(mag);
            match (k, unit) {
                (0, _) => write!(f, "{}", FieldDisplay(&self.field, mag))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", FieldDisplay(&self.field, mag))?,
            }
            match k {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{}", self.var, k)?,
            }
        }
        Ok(())
    }

    fn describe(&self) -> String {
        alloc::format!("{}[{}]", self.field.describe(), self.var)
    }
}

struct FieldDisplay<'a, F: Field>(&'a F, &'a F::Elem);

impl<F: Field> fmt::Display for FieldDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_elem(self.1, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};
    use alloc::string::ToString;

    #[test]
    fn square_of_x_plus_one_in_char_two() {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), "x");
        let x1 = r.from_coeffs(vec![1, 1]);
        assert_eq!(r.mul(&x1, &x1), r.from_coeffs(vec![1, 0, 1]));
    }

    #[test]
    fn exact_division_over_q() {
        let r = PolyRing::new(Rationals, "x");
        let a = r.add(&r.var_pow(3), &r.var_pow(1));
        let b = r.add(&r.var_pow(2), &r.one());
        let (q, rem) = r.div_rem(&a, &b);
        assert_eq!(q, r.var_pow(1));
        assert!(rem.is_zero());
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
    }

    #[test]
    fn xgcd_of_x2_minus_1_and_x_minus_1() {
        let r = PolyRing::new(Rationals, "x");
        let a = r.sub(&r.var_pow(2), &r.one());
        let b = r.sub(&r.var_pow(1), &r.one());
        let (g, u, v) = r.xgcd(&a, &b);
        assert_eq!(g, b);
        assert!(u.is_zero());
        assert_eq!(v, r.one());
    }

    #[test]
    fn printing() {
        let r = PolyRing::new(Rationals, "x");
        let p = r.from_coeffs(vec![
            Rationals.from_int(&BigInt::from(-1)),
            Rationals.zero(),
            num_rational::BigRational::new(BigInt::from(1), BigInt::from(2)),
        ]);
        assert_eq!(r.display(&p).to_string(), "1/2*x^2-1");
        let q = r.neg(&r.var_pow(3));
        assert_eq!(r.display(&q).to_string(), "-x^3");
    }
}
