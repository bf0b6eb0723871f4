//! Almost mathematics over the dyadic perfection `V = k[t^{1/2^∞}]` with
//! `m = (t^ε : ε > 0)`, evaluated depth by depth on the finite levels
//! `V_d = k[u_d]`, `u_d = t^{1/2^d}`.
//!
//! "Almost zero at depth `d`" means killed by `u_d`. Since `u_d = u_{d+1}²`,
//! a verdict at depth `d` implies the verdict at every shallower depth.

use alloc::format;
use alloc::vec::Vec;

use thiserror::Error;

use crate::arrow::ArrowMap;
use crate::fpmod::{tensor, Algebra, FpError, FpModule, ModuleMap};
use crate::linalg::Matrix;
use crate::ring::{EuclideanDomain, Field, Poly, PolyRing};
use crate::tower::{AdicModuleTower, SmithIdeal, Tower, TowerError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlmostError {
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error("depth {given} is below the defining depth {defining}")]
    Depth { given: usize, defining: usize },
    #[error("matrix is not idempotent")]
    NotIdempotent,
}

pub type V<F> = PolyRing<F>;
pub type VElem<F> = Poly<<F as Field>::Elem>;

/// A module presented over `V_d` (or a quotient algebra of it).
#[derive(Clone, Debug)]
pub struct AlmostModule<F: Field> {
    pub depth: usize,
    pub module: FpModule<V<F>>,
}

/// A map presented over `V_d`.
#[derive(Clone, Debug)]
pub struct AlmostMap<F: Field> {
    pub depth: usize,
    pub map: ModuleMap<V<F>>,
}

/// One boolean per depth `0..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthVerdict {
    pub depths: Vec<bool>,
}

impl DepthVerdict {
    pub fn holds(&self) -> bool {
        self.depths.iter().all(|&b| b)
    }

    pub fn at(&self, d: usize) -> bool {
        self.depths[d]
    }

    /// True depths form an initial segment.
    pub fn downward_closed(&self) -> bool {
        self.depths.windows(2).all(|w| w[0] || !w[1])
    }

    /// Largest `d` with the verdict true at all depths `≤ d`.
    pub fn deepest(&self) -> Option<usize> {
        self.depths.iter().take_while(|&&b| b).count().checked_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostIsoVerdict {
    pub injective: DepthVerdict,
    pub surjective: DepthVerdict,
}

impl AlmostIsoVerdict {
    pub fn iso(&self) -> DepthVerdict {
        DepthVerdict {
            depths: self
                .injective
                .depths
                .iter()
                .zip(&self.surjective.depths)
                .map(|(a, b)| *a && *b)
                .collect(),
        }
    }
}

/// `m̃_d ⊗ M` with the multiplication `μ: m̃_d ⊗ M → M`.
#[derive(Clone, Debug)]
pub struct Firmified<F: Field> {
    pub module: AlmostModule<F>,
    pub mu: AlmostMap<F>,
}

/// A summand of `m̃_d ⊗ V_dⁿ` cut out by an idempotent.
#[derive(Clone, Debug)]
pub struct DirectFactor<F: Field> {
    pub ambient: AlmostModule<F>,
    pub summand: AlmostModule<F>,
    pub inclusion: AlmostMap<F>,
    pub retraction: AlmostMap<F>,
    /// `retraction ∘ inclusion = id` and `inclusion ∘ retraction = e`.
    pub certified: bool,
}

/// Almost adic completeness at one level: exact verdict and per-depth verdicts.
#[derive(Clone, Debug)]
pub struct AlmostLevel {
    pub level: usize,
    pub exact: bool,
    pub almost: DepthVerdict,
}

#[derive(Clone, Debug)]
pub struct AlmostAdicReport {
    pub bound: usize,
    pub depth: usize,
    pub levels: Vec<AlmostLevel>,
}

impl AlmostAdicReport {
    pub fn exact(&self) -> bool {
        self.levels.iter().all(|l| l.exact)
    }

    pub fn almost(&self) -> bool {
        self.levels.iter().all(|l| l.almost.holds())
    }

    pub fn monotone(&self) -> bool {
        self.levels.iter().all(|l| l.almost.downward_closed())
    }
}

/// The ladder `V_0 ⊂ V_1 ⊂ … ⊂ V_K`.
#[derive(Clone, Debug)]
pub struct AlmostContext<F: Field> {
    field: F,
    depth: usize,
}

impl<F: Field> AlmostContext<F> {
    pub fn new(field: F, depth: usize) -> Self {
        Self { field, depth }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `V_d = k[u_d]`
    pub fn ring(&self, d: usize) -> V<F> {
        PolyRing::new(self.field.clone(), &format!("u{d}"))
    }

    pub fn algebra(&self, d: usize) -> Algebra<V<F>> {
        Algebra::base_ring(self.ring(d))
    }

    /// `u_d ∈ V_d`
    pub fn uniformizer(&self, d: usize) -> VElem<F> {
        self.ring(d).var_pow(1)
    }

    /// `V_from → V_to`, `u_from ↦ u_to^{2^{to−from}}`.
    pub fn lift(&self, a: &VElem<F>, from: usize, to: usize) -> VElem<F> {
        assert!(to >= from);
        self.ring(to).inflate(a, 1 << (to - from))
    }

    /// The level maps are injective ring maps on the given elements.
    pub fn transition_is_injective_hom(&self, d: usize, elems: &[VElem<F>]) -> bool {
        let (r, s) = (self.ring(d), self.ring(d + 1));
        let up = |a: &VElem<F>| self.lift(a, d, d + 1);
        elems.iter().all(|a| r.is_zero(a) == s.is_zero(&up(a)))
            && elems.iter().all(|a| {
                elems
                    .iter()
                    .all(|b| up(&r.mul(a, b)) == s.mul(&up(a), &up(b)) && up(&r.add(a, b)) == s.add(&up(a), &up(b)))
            })
            && up(&r.one()) == s.one()
    }

    pub fn lift_algebra(&self, alg: &Algebra<V<F>>, from: usize, to: usize) -> Algebra<V<F>> {
        match alg.modulus() {
            None => self.algebra(to),
            Some(f) => Algebra::quotient(self.ring(to), self.lift(f, from, to)),
        }
    }

    fn lift_matrix(&self, m: &Matrix<V<F>>, from: usize, to: usize) -> Matrix<V<F>> {
        let r = self.ring(to);
        Matrix::from_fn(&r, m.rows(), m.cols(), |i, j| self.lift(m.get(i, j), from, to))
    }

    fn lift_module(&self, m: &FpModule<V<F>>, from: usize, to: usize) -> FpModule<V<F>> {
        let alg = self.lift_algebra(m.algebra(), from, to);
        FpModule::new(&alg, m.gens(), self.lift_matrix(m.rels(), from, to)).expect("shape")
    }

    /// Flat base change to `V_to`.
    pub fn base_change(&self, m: &AlmostModule<F>, to: usize) -> Result<AlmostModule<F>, AlmostError> {
        if to < m.depth {
            return Err(AlmostError::Depth {
                given: to,
                defining: m.depth,
            });
        }
        Ok(AlmostModule {
            depth: to,
            module: self.lift_module(&m.module, m.depth, to),
        })
    }

    pub fn base_change_map(&self, f: &AlmostMap<F>, to: usize) -> Result<AlmostMap<F>, AlmostError> {
        if to < f.depth {
            return Err(AlmostError::Depth {
                given: to,
                defining: f.depth,
            });
        }
        let s = self.lift_module(f.map.source(), f.depth, to);
        let t = self.lift_module(f.map.target(), f.depth, to);
        Ok(AlmostMap {
            depth: to,
            map: ModuleMap::new(&s, &t, self.lift_matrix(f.map.matrix(), f.depth, to))?,
        })
    }

    pub fn base_change_ideal(&self, j: &SmithIdeal<V<F>>, from: usize, to: usize) -> SmithIdeal<V<F>> {
        let alg = self.lift_algebra(j.algebra(), from, to);
        let up = |xs: &[VElem<F>]| xs.iter().map(|x| self.lift(x, from, to)).collect();
        SmithIdeal::with_relations(&alg, up(j.relations()), up(j.generators()))
    }

    /// `u_d · M = 0`, decided at level `max(d, d₀)`.
    pub fn killed_at(&self, m: &AlmostModule<F>, d: usize) -> bool {
        let level = d.max(m.depth);
        let module = if level == m.depth {
            m.module.clone()
        } else {
            self.lift_module(&m.module, m.depth, level)
        };
        let c = self.ring(level).var_pow(1 << (level - d));
        ModuleMap::scalar(&module, &c).is_zero()
    }

    pub fn almost_zero_to_depth(&self, m: &AlmostModule<F>, depth: usize) -> DepthVerdict {
        DepthVerdict {
            depths: (0..=depth).map(|d| self.killed_at(m, d)).collect(),
        }
    }

    pub fn almost_iso_to_depth(&self, f: &AlmostMap<F>, depth: usize) -> AlmostIsoVerdict {
        let ker = AlmostModule {
            depth: f.depth,
            module: f.map.kernel().module,
        };
        let cok = AlmostModule {
            depth: f.depth,
            module: f.map.cokernel().module,
        };
        AlmostIsoVerdict {
            injective: self.almost_zero_to_depth(&ker, depth),
            surjective: self.almost_zero_to_depth(&cok, depth),
        }
    }

    /// Both components of a square almost iso, per depth.
    pub fn square_almost_iso(&self, depth_of: usize, sq: &ArrowMap<V<F>>, depth: usize) -> DepthVerdict {
        let wrap = |map: &ModuleMap<V<F>>| AlmostMap {
            depth: depth_of,
            map: map.clone(),
        };
        let a = self.almost_iso_to_depth(&wrap(sq.top()), depth).iso();
        let b = self.almost_iso_to_depth(&wrap(sq.bottom()), depth).iso();
        DepthVerdict {
            depths: a.depths.iter().zip(&b.depths).map(|(x, y)| *x && *y).collect(),
        }
    }

    /// `m̃_d ⊗ M → M` with `m̃_d = (u_d) ⊗ (u_d)` over `V_d`.
    pub fn firmify(&self, m: &AlmostModule<F>, d: usize) -> Result<Firmified<F>, AlmostError> {
        let md = self.base_change(m, d)?;
        let alg = md.module.algebra().clone();
        let r = self.ring(d);
        let u = self.uniformizer(d);
        let ideal = FpModule::free(&alg, 1).span(&Matrix::from_rows(&r, alloc::vec![alloc::vec![u.clone()]], 1));
        let mt = tensor(&ideal.module, &ideal.module)?;
        let firm = tensor(&mt, &md.module)?;
        let g = md.module.gens();
        let mu = ModuleMap::new(&firm, &md.module, Matrix::identity(&r, g).scale(&r.mul(&u, &u)))?;
        Ok(Firmified {
            module: AlmostModule { depth: d, module: firm },
            mu: AlmostMap { depth: d, map: mu },
        })
    }

    /// The summand `e·(m̃_d ⊗ V_dⁿ)` for an idempotent `n×n` matrix `e` over `V_d`.
    pub fn direct_factor(&self, d: usize, e: &Matrix<V<F>>) -> Result<DirectFactor<F>, AlmostError> {
        if e.mul(e) != *e {
            return Err(AlmostError::NotIdempotent);
        }
        let free = AlmostModule {
            depth: d,
            module: FpModule::free(&self.algebra(d), e.rows()),
        };
        let x = self.firmify(&free, d)?.module;
        let p = ModuleMap::new(&x.module, &x.module, e.clone())?;
        let img = p.image();
        let back = img.inclusion.compose(&img.corestriction);
        let certified = img.corestriction.compose(&img.inclusion).same_as(&ModuleMap::identity(&img.module))
            && back.same_as(&p);
        Ok(DirectFactor {
            ambient: x,
            summand: AlmostModule {
                depth: d,
                module: img.module,
            },
            inclusion: AlmostMap {
                depth: d,
                map: img.inclusion,
            },
            retraction: AlmostMap {
                depth: d,
                map: img.corestriction,
            },
            certified,
        })
    }

    /// `V_d/(u_d)`
    pub fn torsion_witness(&self, d: usize) -> AlmostModule<F> {
        AlmostModule {
            depth: d,
            module: FpModule::cyclic(&self.algebra(d), self.uniformizer(d)),
        }
    }

    /// Level `n` of the almost adic check: the comparison
    /// `Pⁿ(j) □ L₁(M) → (IM/Iⁿ⁺¹M → M/Iⁿ⁺¹M)` and the truncation-consistency
    /// squares, each tested exactly and per depth.
    pub fn almost_adic_level(
        &self,
        depth_of: usize,
        tower: &Tower<V<F>>,
        adic: &AdicModuleTower<V<F>>,
        n: usize,
        depth: usize,
    ) -> Result<AlmostLevel, AlmostError> {
        let mut squares = adic.consistency_squares(tower, n)?;
        squares.push(adic.comparison(n)?);
        let exact = squares.iter().all(|s| s.is_iso());
        let mut almost = alloc::vec![true; depth + 1];
        for s in &squares {
            let v = self.square_almost_iso(depth_of, s, depth);
            for (a, b) in almost.iter_mut().zip(v.depths) {
                *a &= b;
            }
        }
        Ok(AlmostLevel {
            level: n,
            exact,
            almost: DepthVerdict { depths: almost },
        })
    }

    /// `j` and `M` presented over the same algebra at depth `d₀`.
    pub fn almost_adic_check(
        &self,
        j: &SmithIdeal<V<F>>,
        m: &AlmostModule<F>,
        bound: usize,
        depth: usize,
    ) -> Result<AlmostAdicReport, AlmostError> {
        if j.algebra() != m.module.algebra() {
            return Err(FpError::AlgebraMismatch.into());
        }
        let tower = Tower::build(j, bound)?;
        let adic = AdicModuleTower::build(&tower, &m.module)?;
        let levels = (0..=bound)
            .map(|n| self.almost_adic_level(m.depth, &tower, &adic, n, depth))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlmostAdicReport { bound, depth, levels })
    }

    /// `M ⊕ V_D/(u_D)`, an `m`-torsion perturbation of `M` at depth `D ≥ d₀`.
    pub fn with_noise(&self, m: &AlmostModule<F>, noise_depth: usize) -> Result<AlmostModule<F>, AlmostError> {
        let md = self.base_change(m, noise_depth)?;
        let noise = FpModule::cyclic(md.module.algebra(), self.uniformizer(noise_depth));
        let sum = crate::fpmod::direct_sum(&md.module, &noise)?;
        Ok(AlmostModule {
            depth: noise_depth,
            module: sum.module,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};

    fn ctx() -> AlmostContext<Rationals> {
        AlmostContext::new(Rationals, 5)
    }

    #[test]
    fn v_mod_t_is_not_almost_zero() {
        let c = ctx();
        let m = AlmostModule {
            depth: 0,
            module: FpModule::cyclic(&c.algebra(0), c.uniformizer(0)),
        };
        let v = c.almost_zero_to_depth(&m, 4);
        assert!(v.at(0));
        assert!(!v.at(1));
        assert!(v.downward_closed());
    }

    #[test]
    fn witness_is_almost_zero_up_to_its_depth() {
        let c = ctx();
        for d in 0..=3 {
            let v = c.almost_zero_to_depth(&c.torsion_witness(d), 5);
            assert_eq!(v.deepest(), Some(d));
            assert!(v.downward_closed());
        }
        let z = AlmostModule {
            depth: 2,
            module: FpModule::zero(&c.algebra(2)),
        };
        assert!(c.almost_zero_to_depth(&z, 5).holds());
    }

    #[test]
    fn inclusion_of_t() {
        let c = ctx();
        let alg = c.algebra(0);
        let v = FpModule::free(&alg, 1);
        let t = AlmostMap {
            depth: 0,
            map: ModuleMap::scalar(&v, &c.uniformizer(0)),
        };
        let verdict = c.almost_iso_to_depth(&t, 3);
        assert!(verdict.injective.holds());
        assert!(!verdict.surjective.at(1));
        let id = AlmostMap {
            depth: 0,
            map: ModuleMap::identity(&v),
        };
        assert!(c.almost_iso_to_depth(&id, 3).iso().holds());
    }

    #[test]
    fn firmify_free() {
        let c = ctx();
        let v = AlmostModule {
            depth: 0,
            module: FpModule::free(&c.algebra(0), 1),
        };
        let f = c.firmify(&v, 3).unwrap();
        let verdict = c.almost_iso_to_depth(&f.mu, 5).iso();
        assert!(f.mu.map.is_injective());
        assert_eq!(verdict.deepest(), Some(2));
        let zero = AlmostModule {
            depth: 1,
            module: FpModule::zero(&c.algebra(1)),
        };
        assert!(c.firmify(&zero, 2).unwrap().module.module.is_zero());
        let deep = AlmostModule {
            depth: 2,
            module: FpModule::free(&c.algebra(2), 1),
        };
        assert!(c.firmify(&deep, 1).is_err());
    }

    #[test]
    fn ladder_maps() {
        let c = AlmostContext::new(PrimeField::new(2).unwrap(), 3);
        let r = c.ring(1);
        let elems = [r.var_pow(3), r.add(&r.var_pow(1), &r.one()), r.zero()];
        assert!(c.transition_is_injective_hom(1, &elems));
        assert_eq!(c.lift(&c.uniformizer(0), 0, 2), c.ring(2).var_pow(4));
    }

    #[test]
    fn direct_factors() {
        let c = ctx();
        let r = c.ring(2);
        let one = r.one();
        let e = Matrix::from_rows(&r, alloc::vec![alloc::vec![one.clone(), r.zero()], alloc::vec![r.zero(), r.zero()]], 2);
        let f = c.direct_factor(2, &e).unwrap();
        assert!(f.certified);
        assert_eq!(f.summand.module.invariant_factors().free_rank, 1);
        let bad = Matrix::from_rows(&r, alloc::vec![alloc::vec![r.var_pow(1)]], 1);
        assert_eq!(c.direct_factor(2, &bad).unwrap_err(), AlmostError::NotIdempotent);
    }

    #[test]
    fn noise_separates_exact_from_almost() {
        let c = ctx();
        let k = 3;
        let alg = c.algebra(k);
        let j = SmithIdeal::new(&alg, alloc::vec![c.uniformizer(k)]);
        let a = AlmostModule {
            depth: k,
            module: FpModule::free(&alg, 1),
        };
        let clean = c.almost_adic_check(&j, &a, 3, k).unwrap();
        assert!(clean.exact() && clean.almost() && clean.monotone());
        let noisy = c.with_noise(&a, k).unwrap();
        let rep = c.almost_adic_check(&j, &noisy, 3, k).unwrap();
        assert!(!rep.exact());
        assert!(rep.almost());
        assert!(rep.monotone());
    }
}
