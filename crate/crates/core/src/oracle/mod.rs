//! Brute-force verification over tiny finite rings: modules as element
//! tables, exhaustive enumeration, element-level hom and tensor, and law
//! checks over the resulting corpora. Nothing here uses Smith normal forms
//! except the engine bridge and the law checks, which drive the engine.

mod bridge;
mod elements;
mod enumerate;
mod laws;

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

pub use bridge::{EngineRing, EngineModule};
pub use bridge::invariant_orders;
pub use elements::{colimit_hom_check, count_homs, dual, homs, is_isomorphic, isomorphisms, tensor_order, ColimitReport, Profile};
pub use enumerate::{enumerate_modules, predicted_class_count, Corpus, MAX_ORDER};
pub use laws::{
    check_engine_agreement, corpus_arrows, describe_map, describe_module, run_laws, run_laws_with, AgreementReport, Law, LawJob,
    LawReport, LawSet, LawTally,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("max order {0} exceeds the guardrail of 64")]
    BoundTooLarge(usize),
    #[error("unknown finite ring '{0}'")]
    UnknownRing(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteRingKind {
    /// `Z/n`
    ZMod(u32),
    /// `F₂[x]/(x²)`, element `a + b·x` encoded as `a + 2b`.
    DualF2,
}

/// A finite commutative ring with explicit tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    kind: FiniteRingKind,
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FiniteRing {
    pub fn zmod(n: u32) -> Self {
        assert!(n >= 2);
        let q = n as usize;
        let add = (0..q * q).map(|i| (i / q + i % q) % q).collect();
        let mul = (0..q * q).map(|i| (i / q) * (i % q) % q).collect();
        Self {
            kind: FiniteRingKind::ZMod(n),
            q,
            add,
            mul,
        }
    }

    pub fn dual_f2() -> Self {
        let add = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        let mul = (0..16)
            .map(|i| {
                let (x, y) = (i / 4, i % 4);
                let (a, b, c, d) = (x & 1, x >> 1, y & 1, y >> 1);
                (a & c) | (((a & d) ^ (b & c)) << 1)
            })
            .collect();
        Self {
            kind: FiniteRingKind::DualF2,
            q: 4,
            add,
            mul,
        }
    }

    /// `z2`, `z3`, `z4`, `zN`, or `f2x2`.
    pub fn parse(name: &str) -> Result<Self, OracleError> {
        match name {
            "f2x2" | "f2[x]/(x^2)" => Ok(Self::dual_f2()),
            _ => name
                .strip_prefix('z')
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|n| (2..=64).contains(n))
                .map(Self::zmod)
                .ok_or_else(|| OracleError::UnknownRing(name.into())),
        }
    }

    pub fn kind(&self) -> FiniteRingKind {
        self.kind
    }

    pub fn name(&self) -> String {
        match self.kind {
            FiniteRingKind::ZMod(n) => alloc::format!("Z/{n}"),
            FiniteRingKind::DualF2 => "F2[x]/(x^2)".into(),
        }
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn one(&self) -> usize {
        1
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> u32 {
        match self.kind {
            FiniteRingKind::ZMod(n) => n,
            FiniteRingKind::DualF2 => 2,
        }
    }

    /// `(π, |R/π|)` when the ring is a chain ring (`Z/pᵏ` or `F₂[x]/(x²)`).
    pub fn uniformizer(&self) -> Option<(usize, usize)> {
        match self.kind {
            FiniteRingKind::DualF2 => Some((2, 2)),
            FiniteRingKind::ZMod(n) => {
                let p = (2..=n).find(|p| n % p == 0)?;
                let mut m = n;
                while m % p == 0 {
                    m /= p;
                }
                (m == 1).then_some(((p % n) as usize, p as usize))
            }
        }
    }
}

/// A finite module given by its addition table and scalar action; element
/// `0` is the zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    ring: FiniteRing,
    n: usize,
    add: Vec<u32>,
    act: Vec<u32>,
}

impl FiniteModule {
    /// From explicit tables; panics if the tables are not a module.
    pub fn from_tables(ring: &FiniteRing, n: usize, add: Vec<u32>, act: Vec<u32>) -> Self {
        let m = Self {
            ring: ring.clone(),
            n,
            add,
            act,
        };
        debug_assert!(m.is_module(), "tables do not define a module");
        m
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self::from_tables(ring, 1, alloc::vec![0], alloc::vec![0; ring.size()])
    }

    /// `Rᵏ` with tuples encoded in base `|R|`, first coordinate most significant.
    pub fn free(ring: &FiniteRing, k: usize) -> Self {
        let q = ring.size();
        let n = q.pow(k as u32);
        let digits = |x: usize| -> Vec<usize> { (0..k).rev().map(|i| x / q.pow(i as u32) % q).collect() };
        let encode = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * q + x);
        let mut add = alloc::vec![0u32; n * n];
        let mut act = alloc::vec![0u32; q * n];
        for a in 0..n {
            let da = digits(a);
            for b in 0..n {
                let s: Vec<usize> = da.iter().zip(digits(b)).map(|(x, y)| ring.add(*x, y)).collect();
                add[a * n + b] = encode(&s) as u32;
            }
            for r in 0..q {
                let s: Vec<usize> = da.iter().map(|x| ring.mul(r, *x)).collect();
                act[r * n + a] = encode(&s) as u32;
            }
        }
        Self::from_tables(ring, n, add, act)
    }

    /// The submodule on the given sorted element set, relabelled `0..len`.
    pub fn restrict(&self, elems: &[usize]) -> Self {
        let mut index = alloc::vec![u32::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            index[e] = i as u32;
        }
        let k = elems.len();
        let q = self.ring.size();
        let mut add = alloc::vec![0u32; k * k];
        let mut act = alloc::vec![0u32; q * k];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                add[i * k + j] = index[self.add(a, b)];
            }
            for r in 0..q {
                act[r * k + i] = index[self.act(r, a)];
            }
        }
        Self::from_tables(&self.ring, k, add, act)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        let (n, m) = (self.n, other.n);
        let q = self.ring.size();
        let size = n * m;
        let mut add = alloc::vec![0u32; size * size];
        let mut act = alloc::vec![0u32; q * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = (self.add(a / m, b / m) * m + other.add(a % m, b % m)) as u32;
            }
            for r in 0..q {
                act[r * size + a] = (self.act(r, a / m) * m + other.act(r, a % m)) as u32;
            }
        }
        Self::from_tables(&self.ring, size, add, act)
    }

    /// `R/rR`
    pub fn cyclic_quotient(ring: &FiniteRing, r: usize) -> Self {
        let q = ring.size();
        let ideal: Vec<usize> = {
            let mut v: Vec<usize> = (0..q).map(|s| ring.mul(s, r)).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        // cosets: smallest representative of x + ideal
        let rep = |x: usize| ideal.iter().map(|&i| ring.add(x, i)).min().unwrap();
        let mut reps: Vec<usize> = (0..q).map(rep).collect();
        reps.sort_unstable();
        reps.dedup();
        let idx = |x: usize| reps.iter().position(|&y| y == rep(x)).unwrap() as u32;
        let n = reps.len();
        let mut add = alloc::vec![0u32; n * n];
        let mut act = alloc::vec![0u32; q * n];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * n + j] = idx(ring.add(a, b));
            }
            for s in 0..q {
                act[s * n + i] = idx(ring.mul(s, a));
            }
        }
        Self::from_tables(ring, n, add, act)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    pub fn act(&self, r: usize, a: usize) -> usize {
        self.act[r * self.n + a] as usize
    }

    fn is_module(&self) -> bool {
        let (n, q, r) = (self.n, self.ring.size(), &self.ring);
        let e = 0..n;
        e.clone().all(|a| self.add(a, 0) == a && self.act(1, a) == a && self.act(0, a) == 0)
            && e.clone().all(|a| e.clone().all(|b| self.add(a, b) == self.add(b, a)))
            && e.clone().all(|a| e.clone().any(|b| self.add(a, b) == 0))
            && e.clone().all(|a| {
                e.clone()
                    .all(|b| e.clone().all(|c| self.add(self.add(a, b), c) == self.add(a, self.add(b, c))))
            })
            && (0..q).all(|s| {
                (0..q).all(|t| {
                    e.clone().all(|a| {
                        self.act(r.mul(s, t), a) == self.act(s, self.act(t, a))
                            && self.act(r.add(s, t), a) == self.add(self.act(s, a), self.act(t, a))
                    })
                })
            })
            && (0..q).all(|s| {
                e.clone()
                    .all(|a| e.clone().all(|b| self.act(s, self.add(a, b)) == self.add(self.act(s, a), self.act(s, b))))
            })
    }

    /// Submodule generated by `elems`, as a sorted element list.
    pub fn span(&self, elems: &[usize]) -> Vec<usize> {
        let mut inside = alloc::vec![false; self.n];
        inside[0] = true;
        let mut cur = alloc::vec![0usize];
        for &g in elems {
            if inside[g] {
                continue;
            }
            let mut next = cur.clone();
            for &s in &cur {
                for r in 0..self.ring.size() {
                    let x = self.add(s, self.act(r, g));
                    if !inside[x] {
                        inside[x] = true;
                        next.push(x);
                    }
                }
            }
            cur = next;
        }
        cur.sort_unstable();
        cur
    }

    /// A generating set chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = alloc::vec![false; self.n];
        inside[0] = true;
        for x in 0..self.n {
            if !inside[x] {
                gens.push(x);
                for y in self.span(&gens) {
                    inside[y] = true;
                }
            }
        }
        gens
    }

    /// `M/S` for a submodule given by its elements, with the projection table.
    pub fn quotient(&self, sub: &[usize]) -> (Self, Vec<usize>) {
        let rep = |x: usize| sub.iter().map(|&s| self.add(x, s)).min().unwrap_or(x);
        let mut reps: Vec<usize> = (0..self.n).map(rep).collect();
        let proj_rep = reps.clone();
        reps.sort_unstable();
        reps.dedup();
        let idx = |x: usize| reps.binary_search(&rep(x)).unwrap();
        let k = reps.len();
        let q = self.ring.size();
        let mut add = alloc::vec![0u32; k * k];
        let mut act = alloc::vec![0u32; q * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * k + j] = idx(self.add(a, b)) as u32;
            }
            for r in 0..q {
                act[r * k + i] = idx(self.act(r, a)) as u32;
            }
        }
        let proj = proj_rep.iter().map(|x| reps.binary_search(x).unwrap()).collect();
        (Self::from_tables(&self.ring, k, add, act), proj)
    }

    /// `{m : r·m = 0}` as a mask.
    pub fn killed_by(&self, r: usize) -> Vec<bool> {
        (0..self.n).map(|a| self.act(r, a) == 0).collect()
    }

    /// Invariants preserved by isomorphism, used to bucket candidates.
    pub fn fingerprint(&self) -> Vec<usize> {
        let mut f = alloc::vec![self.n];
        for r in 0..self.ring.size() {
            f.push(self.killed_by(r).iter().filter(|&&b| b).count());
            let mut img: Vec<usize> = (0..self.n).map(|a| self.act(r, a)).collect();
            img.sort_unstable();
            img.dedup();
            f.push(img.len());
        }
        f
    }
}

/// A homomorphism given by its full image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMap {
    pub source: FiniteModule,
    pub target: FiniteModule,
    pub table: Vec<usize>,
}

impl FiniteMap {
    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        (0..s.order()).all(|a| {
            (0..s.order()).all(|b| self.table[s.add(a, b)] == t.add(self.table[a], self.table[b]))
                && (0..s.ring().size()).all(|r| self.table[s.act(r, a)] == t.act(r, self.table[a]))
        })
    }

    pub fn is_injective(&self) -> bool {
        (1..self.source.order()).all(|a| self.table[a] != 0)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = alloc::vec![false; self.target.order()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Image as a sorted element list of the target.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.table.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `X₁ / im f`
    pub fn cokernel(&self) -> FiniteModule {
        self.target.quotient(&self.image()).0
    }

    pub fn compose(&self, first: &FiniteMap) -> FiniteMap {
        FiniteMap {
            source: first.source.clone(),
            target: self.target.clone(),
            table: first.table.iter().map(|&x| self.table[x]).collect(),
        }
    }
}
