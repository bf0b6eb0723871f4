//! Translation of element tables into finitely presented modules over the
//! engine rings `Z/n = Z/(n)` and `F₂[x]/(x²)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{FiniteMap, FiniteModule, FiniteRing, FiniteRingKind};
use crate::arrow::Arrow;
use crate::fpmod::{Algebra, FpModule, InvariantFactors, ModuleMap};
use crate::linalg::Matrix;
use crate::ring::{EuclideanDomain, Integers, PolyRing, PrimeField};

/// An engine ring that realizes some finite ring as a quotient algebra.
pub trait EngineRing: EuclideanDomain {
    fn realize(ring: &FiniteRing) -> Option<Algebra<Self>>;
    /// The engine element representing the finite-ring element `r`.
    fn lift(alg: &Algebra<Self>, r: usize) -> Self::Elem;
    /// `|A/(d)|`
    fn quotient_order(alg: &Algebra<Self>, d: &Self::Elem) -> usize;
}

impl EngineRing for Integers {
    fn realize(ring: &FiniteRing) -> Option<Algebra<Self>> {
        match ring.kind() {
            FiniteRingKind::ZMod(n) => Some(Algebra::quotient(Integers, BigInt::from(n))),
            FiniteRingKind::DualF2 => None,
        }
    }

    fn lift(_: &Algebra<Self>, r: usize) -> BigInt {
        BigInt::from(r)
    }

    fn quotient_order(alg: &Algebra<Self>, d: &BigInt) -> usize {
        let n = alg.modulus().expect("quotient algebra");
        let g = d.gcd(n);
        if g.is_zero() {
            usize::MAX
        } else {
            usize::try_from(g.abs()).unwrap_or(usize::MAX)
        }
    }
}

impl EngineRing for PolyRing<PrimeField> {
    fn realize(ring: &FiniteRing) -> Option<Algebra<Self>> {
        match ring.kind() {
            FiniteRingKind::DualF2 => {
                let k = PolyRing::new(PrimeField::new(2).ok()?, "x");
                let f = k.var_pow(2);
                Some(Algebra::quotient(k, f))
            }
            FiniteRingKind::ZMod(_) => None,
        }
    }

    fn lift(alg: &Algebra<Self>, r: usize) -> Self::Elem {
        alg.ring().from_coeffs(alloc::vec![(r & 1) as u64, (r >> 1) as u64])
    }

    fn quotient_order(_: &Algebra<Self>, d: &Self::Elem) -> usize {
        if d.is_zero() {
            return 4;
        }
        let v = d.coeffs().iter().take_while(|c| **c == 0).count();
        1 << v.min(2)
    }
}

/// A finite module together with a presentation on a chosen generating set.
#[derive(Clone, Debug)]
pub struct EngineModule<R: EngineRing> {
    pub finite: FiniteModule,
    pub gens: Vec<usize>,
    /// Coordinates of every element in terms of `gens`.
    pub coords: Vec<Vec<usize>>,
    pub module: FpModule<R>,
}

impl<R: EngineRing> EngineModule<R> {
    pub fn new(alg: &Algebra<R>, m: &FiniteModule) -> Self {
        let gens = m.generators();
        let g = gens.len();
        let ring = m.ring();
        let q = ring.size();
        let free = FiniteModule::free(ring, g);
        let digits = |t: usize| -> Vec<usize> { (0..g).rev().map(|i| t / q.pow(i as u32) % q).collect() };
        let eval = |c: &[usize]| c.iter().zip(&gens).fold(0, |acc, (&r, &x)| m.add(acc, m.act(r, x)));
        let mut coords: Vec<Option<Vec<usize>>> = alloc::vec![None; m.order()];
        // relation tuples, kept only when they enlarge the relation module
        let mut rels: Vec<usize> = Vec::new();
        let mut rel_span = alloc::vec![0usize];
        for t in 0..free.order() {
            let c = digits(t);
            let x = eval(&c);
            if coords[x].is_none() {
                coords[x] = Some(c.clone());
            }
            if x == 0 && rel_span.binary_search(&t).is_err() {
                rels.push(t);
                rel_span = free.span(&rels);
            }
        }
        let r = alg.ring();
        let cols: Vec<Vec<R::Elem>> = rels
            .iter()
            .map(|&t| digits(t).into_iter().map(|c| R::lift(alg, c)).collect())
            .collect();
        let mut mat = Matrix::zeros(r, g, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                mat.set(i, j, v.clone());
            }
        }
        let module = FpModule::new(alg, g, mat).expect("relations of the right shape");
        Self {
            finite: m.clone(),
            gens,
            coords: coords.into_iter().map(|c| c.expect("generators span")).collect(),
            module,
        }
    }

    /// The engine map of an element-table homomorphism.
    pub fn map_to(&self, target: &Self, f: &FiniteMap) -> ModuleMap<R> {
        let alg = self.module.algebra();
        let mut mat = Matrix::zeros(alg.ring(), target.gens.len(), self.gens.len());
        for (j, &g) in self.gens.iter().enumerate() {
            for (i, &c) in target.coords[f.table[g]].iter().enumerate() {
                mat.set(i, j, R::lift(alg, c));
            }
        }
        ModuleMap::new(&self.module, &target.module, mat).expect("homomorphism")
    }

    pub fn arrow(alg: &Algebra<R>, f: &FiniteMap) -> Arrow<R> {
        let s = Self::new(alg, &f.source);
        let t = Self::new(alg, &f.target);
        Arrow::new(s.map_to(&t, f))
    }
}

/// Order and cyclic-summand orders `|A/(d)|` read off invariant factors.
pub fn invariant_orders<R: EngineRing>(alg: &Algebra<R>, inv: &InvariantFactors<R>) -> (usize, Vec<usize>) {
    let mut orders: Vec<usize> = inv.torsion.iter().map(|d| R::quotient_order(alg, d)).collect();
    // free summands over a quotient algebra are whole copies of A
    let whole = R::quotient_order(alg, &alg.ring().zero());
    orders.extend(core::iter::repeat_n(whole, inv.free_rank));
    orders.retain(|&o| o > 1);
    orders.sort_unstable();
    (orders.iter().product(), orders)
}
