//! Smith ideals `j: I → A`, their powers and the nilpotent Taylor tower
//! `Pⁿ(j) = (I/Iⁿ⁺¹ → A/Iⁿ⁺¹)` with level-wise completeness checks.
//!
//! A Smith ideal lives in a cyclic ambient `A/J` (usually `J = 0`); this lets
//! truncated data such as `Pᴺ(j)` be treated as a Smith ideal again without
//! leaving the algebra `A`.

mod checks;
mod levels;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::arrow::Arrow;
use crate::fpmod::{tensor, Algebra, FpError, FpModule, ModuleMap, Submodule};
use crate::linalg::Matrix;
use crate::ring::EuclideanDomain;

pub use checks::{
    check_complete, check_composition, yekutieli_compare, AnalyticVerdict, CompletenessVerdict, IsoOutcome,
    LevelCheck, SmithMorphism, YekutieliVerdict,
};
pub use levels::{AdicModuleTower, GradedPiece, SequenceCertificate, Tower, TowerLevel};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error("map does not send the source ideal into the target ideal")]
    NotIdealRespecting,
    #[error("map does not send 1 to 1")]
    NotUnital,
    #[error("level {0} is outside the tower")]
    Level(usize),
}

/// An ideal `I = (g_1, …, g_k)` of `A/J`.
#[derive(Clone, Debug)]
pub struct SmithIdeal<R: EuclideanDomain> {
    alg: Algebra<R>,
    relations: Vec<R::Elem>,
    gens: Vec<R::Elem>,
    ambient: FpModule<R>,
    ideal: Submodule<R>,
}

impl<R: EuclideanDomain> SmithIdeal<R> {
    pub fn new(alg: &Algebra<R>, gens: Vec<R::Elem>) -> Self {
        Self::with_relations(alg, Vec::new(), gens)
    }

    /// Ideal of `A/(relations)` generated by `gens`.
    pub fn with_relations(alg: &Algebra<R>, relations: Vec<R::Elem>, gens: Vec<R::Elem>) -> Self {
        let gens: Vec<R::Elem> = gens.iter().map(|g| alg.reduce(g)).collect();
        let relations: Vec<R::Elem> = relations.iter().map(|g| alg.reduce(g)).collect();
        let r = alg.ring();
        let ambient = FpModule::new(
            alg,
            1,
            Matrix::from_rows(r, alloc::vec![relations.clone()], relations.len()),
        )
        .expect("shape");
        let ideal = ambient.span(&Matrix::from_rows(r, alloc::vec![gens.clone()], gens.len()));
        Self {
            alg: alg.clone(),
            relations,
            gens,
            ambient,
            ideal,
        }
    }

    pub fn algebra(&self) -> &Algebra<R> {
        &self.alg
    }

    pub fn ring(&self) -> &R {
        self.alg.ring()
    }

    pub fn generators(&self) -> &[R::Elem] {
        &self.gens
    }

    pub fn relations(&self) -> &[R::Elem] {
        &self.relations
    }

    /// `A/J`
    pub fn ambient(&self) -> &FpModule<R> {
        &self.ambient
    }

    /// `I`, presented on the given generators.
    pub fn ideal(&self) -> &FpModule<R> {
        &self.ideal.module
    }

    /// `j: I → A/J`
    pub fn arrow(&self) -> Arrow<R> {
        Arrow::new(self.ideal.inclusion.clone())
    }

    /// All products of `n` generators, one per multiset of indices, with the
    /// index multisets in lexicographic order.
    pub fn products(&self, n: usize) -> Vec<(Vec<usize>, R::Elem)> {
        let r = self.ring();
        let k = self.gens.len();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = alloc::vec![0; n];
        if n > 0 && k == 0 {
            return out;
        }
        loop {
            let p = idx
                .iter()
                .fold(r.one(), |acc, &i| self.alg.reduce(&r.mul(&acc, &self.gens[i])));
            out.push((idx.clone(), p));
            // next nondecreasing sequence
            let Some(pos) = (0..n).rev().find(|&p| idx[p] + 1 < k) else {
                break;
            };
            let v = idx[pos] + 1;
            for x in &mut idx[pos..] {
                *x = v;
            }
        }
        out
    }

    /// `Iⁿ ⊂ A/J`, presented on the products of [`products`](Self::products).
    pub fn power(&self, n: usize) -> Submodule<R> {
        let prods: Vec<R::Elem> = self.products(n).into_iter().map(|(_, p)| p).collect();
        let m = Matrix::from_rows(self.ring(), alloc::vec![prods.clone()], prods.len());
        self.ambient.span(&m)
    }

    /// Matrix expressing the generators of `Iᵐ` in those of `Iⁿ` (m ≥ n):
    /// `g_{i₁}⋯g_{iₘ} ↦ (g_{iₙ₊₁}⋯g_{iₘ})·e_{(i₁,…,iₙ)}`.
    pub(crate) fn power_in_power(&self, m: usize, n: usize) -> Matrix<R> {
        assert!(m >= n);
        let r = self.ring();
        let rows: BTreeMap<Vec<usize>, usize> = self
            .products(n)
            .into_iter()
            .enumerate()
            .map(|(i, (idx, _))| (idx, i))
            .collect();
        let prods = self.products(m);
        let mut out = Matrix::zeros(r, rows.len(), prods.len());
        for (c, (idx, _)) in prods.iter().enumerate() {
            let rest = idx[n..]
                .iter()
                .fold(r.one(), |acc, &i| self.alg.reduce(&r.mul(&acc, &self.gens[i])));
            out.set(rows[&idx[..n]], c, rest);
        }
        out
    }

    /// `A/(J + Iⁿ⁺¹)` as a cyclic module.
    pub fn quotient_ambient(&self, n: usize) -> FpModule<R> {
        let mut rel = self.relations.clone();
        rel.extend(self.products(n + 1).into_iter().map(|(_, p)| p));
        let r = self.ring();
        FpModule::new(&self.alg, 1, Matrix::from_rows(r, alloc::vec![rel.clone()], rel.len())).expect("shape")
    }

    /// `μₙ: I^{⊗n} → I`.
    pub fn mu(&self, n: usize) -> Result<ModuleMap<R>, TowerError> {
        assert!(n >= 1);
        let i = self.ideal();
        let mut src = i.clone();
        for _ in 1..n {
            src = tensor(&src, i)?;
        }
        let r = self.ring();
        let k = self.gens.len();
        let total = k.pow(n as u32);
        // generator index in base k, most significant factor first
        let mut m = Matrix::zeros(r, k, total);
        for c in 0..total {
            let mut digits = alloc::vec![0; n];
            let mut x = c;
            for d in digits.iter_mut().rev() {
                *d = x % k;
                x /= k;
            }
            let rest = digits[1..]
                .iter()
                .fold(r.one(), |acc, &i| self.alg.reduce(&r.mul(&acc, &self.gens[i])));
            let cur = m.get(digits[0], c).clone();
            m.set(digits[0], c, r.add(&cur, &rest));
        }
        Ok(ModuleMap::new(&src, i, m)?)
    }

    /// The literal nilpotency predicate: `cok(μₙ) = 0`.
    pub fn mu_surjective(&self, n: usize) -> Result<bool, TowerError> {
        Ok(self.mu(n)?.is_surjective())
    }

    /// `Iⁿ = 0` in `A/J`.
    pub fn power_vanishes(&self, n: usize) -> bool {
        self.power(n).module.is_zero()
    }

    /// Products of two generators land in `I`, decided by membership.
    pub fn is_multiplicatively_closed(&self) -> bool {
        let prods = self.power(2).inclusion;
        prods.lift_through(&self.ideal.inclusion).is_some()
    }

    /// The same generators in `A/(J + Iⁿ⁺¹)`: the data of `Pⁿ(j)` viewed as a Smith ideal.
    pub fn truncated(&self, n: usize) -> Self {
        let mut rel = self.relations.clone();
        rel.extend(self.products(n + 1).into_iter().map(|(_, p)| p));
        Self::with_relations(&self.alg, rel, self.gens.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    fn zi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn products_enumerate_multisets() {
        let j = SmithIdeal::new(&Algebra::base_ring(Integers), alloc::vec![zi(2), zi(3)]);
        let p: Vec<BigInt> = j.products(2).into_iter().map(|(_, x)| x).collect();
        assert_eq!(p, alloc::vec![zi(4), zi(6), zi(9)]);
        assert_eq!(j.products(0).len(), 1);
    }

    #[test]
    fn powers() {
        let z = Algebra::base_ring(Integers);
        let j = SmithIdeal::new(&z, alloc::vec![zi(5)]);
        let p3 = j.power(3);
        let q = p3.inclusion.cokernel().module;
        assert_eq!(q.invariant_factors().torsion, alloc::vec![zi(125)]);
        assert!(SmithIdeal::new(&z, alloc::vec![zi(0)]).power_vanishes(1));
        let z8 = Algebra::quotient(Integers, zi(8));
        let j = SmithIdeal::new(&z8, alloc::vec![zi(2)]);
        assert!(j.power_vanishes(3));
        assert!(!j.power_vanishes(2));
    }

    #[test]
    fn nilpotency_predicates_differ() {
        let z8 = Algebra::quotient(Integers, zi(8));
        let j = SmithIdeal::new(&z8, alloc::vec![zi(2)]);
        assert!(j.power_vanishes(3));
        assert!(!j.mu_surjective(3).unwrap());
        let zero = SmithIdeal::new(&z8, alloc::vec![zi(0)]);
        assert!(zero.mu_surjective(1).unwrap());
        let z = Algebra::base_ring(Integers);
        let p = SmithIdeal::new(&z, alloc::vec![zi(3)]);
        for n in 2..5 {
            assert!(!p.power_vanishes(n));
            assert!(!p.mu_surjective(n).unwrap());
        }
        assert!(p.is_multiplicatively_closed());
    }
}
