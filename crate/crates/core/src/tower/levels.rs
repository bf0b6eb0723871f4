use alloc::vec::Vec;

use super::{SmithIdeal, TowerError};
use crate::arrow::{pushout_product, pushout_product_maps, Arrow, ArrowMap, Embedding};
use crate::fpmod::{tensor, FpModule, ModuleMap};
use crate::linalg::Matrix;
use crate::ring::EuclideanDomain;

/// `Pⁿ(j) = (I/Iⁿ⁺¹ → A/Iⁿ⁺¹)` with the localization square `j → Pⁿ(j)`.
#[derive(Clone, Debug)]
pub struct TowerLevel<R: EuclideanDomain> {
    pub n: usize,
    pub arrow: Arrow<R>,
    pub localization: ArrowMap<R>,
}

impl<R: EuclideanDomain> TowerLevel<R> {
    pub fn compute(j: &SmithIdeal<R>, n: usize) -> Result<Self, TowerError> {
        let r = j.ring();
        let k = j.generators().len();
        let ideal = j.ideal();
        let higher = j.power(n + 1).module;
        let step = ModuleMap::new(&higher, ideal, j.power_in_power(n + 1, 1))?;
        let itil = step.cokernel().module;
        let q = j.quotient_ambient(n);
        let gens = Matrix::from_rows(r, alloc::vec![j.generators().to_vec()], k);
        let arrow = Arrow::new(ModuleMap::new(&itil, &q, gens)?);
        let localization = ArrowMap::new(
            &j.arrow(),
            &arrow,
            ModuleMap::new(ideal, &itil, Matrix::identity(r, k))?,
            ModuleMap::new(j.ambient(), &q, Matrix::identity(r, 1))?,
        )?;
        Ok(Self { n, arrow, localization })
    }

    /// `I/Iⁿ⁺¹`
    pub fn ideal_part(&self) -> &FpModule<R> {
        self.arrow.x0()
    }

    /// `A/Iⁿ⁺¹`
    pub fn bottom(&self) -> &FpModule<R> {
        self.arrow.x1()
    }
}

/// Identity-matrix square between two levels whose presentations share generators.
pub(crate) fn canonical_square<R: EuclideanDomain>(from: &Arrow<R>, to: &Arrow<R>) -> Result<ArrowMap<R>, TowerError> {
    let r = from.x0().ring();
    let top = ModuleMap::new(from.x0(), to.x0(), Matrix::identity(r, from.x0().gens()))?;
    let bottom = ModuleMap::new(from.x1(), to.x1(), Matrix::identity(r, from.x1().gens()))?;
    Ok(ArrowMap::new(from, to, top, bottom)?)
}

/// Levels `0..=N` with transitions `Pⁿ → Pⁿ⁻¹`.
#[derive(Clone, Debug)]
pub struct Tower<R: EuclideanDomain> {
    pub ideal: SmithIdeal<R>,
    pub levels: Vec<TowerLevel<R>>,
    /// `transitions[n - 1]: Pⁿ → Pⁿ⁻¹`
    pub transitions: Vec<ArrowMap<R>>,
}

impl<R: EuclideanDomain> Tower<R> {
    pub fn build(j: &SmithIdeal<R>, bound: usize) -> Result<Self, TowerError> {
        let levels = (0..=bound)
            .map(|n| TowerLevel::compute(j, n))
            .collect::<Result<Vec<_>, _>>()?;
        Self::assemble(j, levels)
    }

    /// Wires transitions between levels computed independently, in order.
    pub fn assemble(j: &SmithIdeal<R>, levels: Vec<TowerLevel<R>>) -> Result<Self, TowerError> {
        let transitions = levels
            .windows(2)
            .map(|w| canonical_square(&w[1].arrow, &w[0].arrow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            ideal: j.clone(),
            levels,
            transitions,
        })
    }

    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> Result<&TowerLevel<R>, TowerError> {
        self.levels.get(n).ok_or(TowerError::Level(n))
    }

    pub fn transitions_epic(&self) -> bool {
        self.transitions.iter().all(|t| t.is_epi())
    }

    /// `transition ∘ localizationₙ = localizationₙ₋₁` at every level.
    pub fn localizations_compatible(&self) -> bool {
        self.transitions
            .iter()
            .zip(self.levels.windows(2))
            .all(|(t, w)| t.compose(&w[1].localization).same_as(&w[0].localization))
    }
}

/// `Iⁿ/Iⁿ⁺¹` on the n-fold products, with `(A/I) ⊗ Iⁿ → Iⁿ/Iⁿ⁺¹`.
#[derive(Clone, Debug)]
pub struct GradedPiece<R: EuclideanDomain> {
    pub n: usize,
    pub module: FpModule<R>,
    pub comparison: ModuleMap<R>,
    pub comparison_iso: bool,
}

impl<R: EuclideanDomain> GradedPiece<R> {
    pub fn compute(j: &SmithIdeal<R>, n: usize) -> Result<Self, TowerError> {
        let r = j.ring();
        let pow = j.power(n).module;
        let next = j.power(n + 1).module;
        let step = ModuleMap::new(&next, &pow, j.power_in_power(n + 1, n))?;
        let module = step.cokernel().module;
        let quotient = j.quotient_ambient(0);
        let src = tensor(&quotient, &pow)?;
        let comparison = ModuleMap::new(&src, &module, Matrix::identity(r, pow.gens()))?;
        let comparison_iso = comparison.is_iso().is_iso();
        Ok(Self {
            n,
            module,
            comparison,
            comparison_iso,
        })
    }

    /// `0 → L₀(Iⁿ/Iⁿ⁺¹) → Pⁿ(j) → Pⁿ⁻¹(j) → 0` for n ≥ 1.
    pub fn sequence(&self, j: &SmithIdeal<R>, tower: &Tower<R>) -> Result<SequenceCertificate<R>, TowerError> {
        assert!(self.n >= 1);
        let n = self.n;
        let r = j.ring();
        let level = tower.level(n)?;
        let transition = tower.transitions.get(n - 1).ok_or(TowerError::Level(n))?.clone();
        let kernel = Arrow::embed(Embedding::L0, &self.module);
        let prods: Vec<R::Elem> = j.products(n).into_iter().map(|(_, p)| p).collect();
        let top = ModuleMap::new(&self.module, level.ideal_part(), j.power_in_power(n, 1))?;
        let bottom = ModuleMap::new(
            &self.module,
            level.bottom(),
            Matrix::from_rows(r, alloc::vec![prods], self.module.gens()),
        )?;
        let inclusion = ArrowMap::new(&kernel, &level.arrow, top, bottom)?;
        let exact_at = |inc: &ModuleMap<R>, t: &ModuleMap<R>| {
            t.compose(inc).is_zero() && t.kernel().inclusion.lift_through(&inc.image().inclusion).is_some()
        };
        let literal = Arrow::embed(Embedding::L1, &self.module);
        Ok(SequenceCertificate {
            n,
            inclusion_mono: inclusion.is_mono(),
            transition_epi: transition.is_epi(),
            exact_top: exact_at(inclusion.top(), transition.top()),
            exact_bottom: exact_at(inclusion.bottom(), transition.bottom()),
            literal_top_exact: transition.top().is_injective(),
            literal_kernel: literal,
            inclusion,
            transition,
        })
    }
}

/// Exactness data for one slot of the tower. The kernel of `Pⁿ → Pⁿ⁻¹` is the
/// identity arrow on the graded piece; `literal_kernel` is `L₁` of it, whose
/// top row `0 → I/Iⁿ⁺¹ → I/Iⁿ` is exact only when the piece vanishes.
#[derive(Clone, Debug)]
pub struct SequenceCertificate<R: EuclideanDomain> {
    pub n: usize,
    pub inclusion: ArrowMap<R>,
    pub transition: ArrowMap<R>,
    pub literal_kernel: Arrow<R>,
    pub inclusion_mono: bool,
    pub transition_epi: bool,
    pub exact_top: bool,
    pub exact_bottom: bool,
    pub literal_top_exact: bool,
}

impl<R: EuclideanDomain> SequenceCertificate<R> {
    pub fn is_exact(&self) -> bool {
        self.inclusion_mono && self.transition_epi && self.exact_top && self.exact_bottom
    }
}

/// `Pⁿ_j(M) = Pⁿ(j) □ L₁(M)` for `n ≤ N`.
#[derive(Clone, Debug)]
pub struct AdicModuleTower<R: EuclideanDomain> {
    pub ideal: SmithIdeal<R>,
    pub module: FpModule<R>,
    pub levels: Vec<Arrow<R>>,
    pub transitions: Vec<ArrowMap<R>>,
}

impl<R: EuclideanDomain> AdicModuleTower<R> {
    pub fn build(tower: &Tower<R>, m: &FpModule<R>) -> Result<Self, TowerError> {
        if m.algebra() != tower.ideal.algebra() {
            return Err(crate::fpmod::FpError::AlgebraMismatch.into());
        }
        let l1 = Arrow::embed(Embedding::L1, m);
        let levels = tower
            .levels
            .iter()
            .map(|l| Ok(pushout_product(&l.arrow, &l1)?.arrow))
            .collect::<Result<Vec<_>, TowerError>>()?;
        let id = l1.identity_map();
        let transitions = tower
            .transitions
            .iter()
            .map(|t| Ok(pushout_product_maps(t, &id)?))
            .collect::<Result<Vec<_>, TowerError>>()?;
        Ok(Self {
            ideal: tower.ideal.clone(),
            module: m.clone(),
            levels,
            transitions,
        })
    }

    pub fn transitions_epic(&self) -> bool {
        self.transitions.iter().all(|t| t.is_epi())
    }

    /// `IM/Iⁿ⁺¹M → M/Iⁿ⁺¹M`, the image form of level `n`.
    pub fn image_level(&self, n: usize) -> Result<Arrow<R>, TowerError> {
        let j = &self.ideal;
        let r = j.ring();
        let g = self.module.gens();
        let bottom = tensor(&j.quotient_ambient(n), &self.module)?;
        let gens = j.generators();
        let mut cols = Vec::with_capacity(gens.len() * g);
        for x in gens {
            for i in 0..g {
                let mut v = alloc::vec![r.zero(); g];
                v[i] = x.clone();
                cols.push(v);
            }
        }
        Ok(Arrow::new(bottom.span(&Matrix::from_columns(r, g, &cols)).inclusion))
    }

    /// The canonical square `Pⁿ(j) □ L₁(M) → (IM/Iⁿ⁺¹M → M/Iⁿ⁺¹M)`. Its top is
    /// onto with kernel coming from torsion of `M`.
    pub fn comparison(&self, n: usize) -> Result<ArrowMap<R>, TowerError> {
        let a = self.levels.get(n).ok_or(TowerError::Level(n))?;
        canonical_square(a, &self.image_level(n)?)
    }

    /// Squares `Pᵐ(j) □ L₁(M) → Pᵐ(Pⁿ(j)) □ L₁(M)` for `m ≤ n`.
    pub fn consistency_squares(&self, tower: &Tower<R>, n: usize) -> Result<Vec<ArrowMap<R>>, TowerError> {
        let id = Arrow::embed(Embedding::L1, &self.module).identity_map();
        let jn = tower.ideal.truncated(n);
        (0..=n)
            .map(|m| {
                let other = TowerLevel::compute(&jn, m)?;
                let sq = canonical_square(&tower.level(m)?.arrow, &other.arrow)?;
                Ok(pushout_product_maps(&sq, &id)?)
            })
            .collect()
    }

    /// For every `m ≤ n ≤ N`, level `m` built from `Pⁿ(j)` viewed as a Smith
    /// ideal is isomorphic to level `m` of this tower via the canonical square.
    pub fn consistent(&self, tower: &Tower<R>) -> Result<bool, TowerError> {
        for n in 0..=tower.bound() {
            if !self.consistency_squares(tower, n)?.iter().all(|s| s.is_iso()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::Algebra;
    use crate::ring::{Integers, PolyRing, PrimeField, Rationals};
    use num_bigint::BigInt;

    fn zi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn p_adic_levels() {
        let z = Algebra::base_ring(Integers);
        for p in [2i64, 3, 5] {
            let j = SmithIdeal::new(&z, alloc::vec![zi(p)]);
            let t = Tower::build(&j, 4).unwrap();
            assert!(t.transitions_epic());
            assert!(t.localizations_compatible());
            for (n, l) in t.levels.iter().enumerate() {
                let pk = zi(p).pow(n as u32 + 1);
                assert_eq!(l.bottom().invariant_factors().torsion, alloc::vec![pk]);
                let top = l.ideal_part().invariant_factors();
                if n == 0 {
                    assert!(top.is_zero());
                } else {
                    assert_eq!(top.torsion, alloc::vec![zi(p).pow(n as u32)]);
                }
            }
        }
    }

    #[test]
    fn unit_ideal_and_zero_ideal() {
        let z = Algebra::base_ring(Integers);
        let t = Tower::build(&SmithIdeal::new(&z, alloc::vec![zi(1)]), 3).unwrap();
        assert!(t.levels.iter().all(|l| l.ideal_part().is_zero() && l.bottom().is_zero()));
        let t = Tower::build(&SmithIdeal::new(&z, alloc::vec![zi(0)]), 3).unwrap();
        for l in &t.levels {
            assert!(l.ideal_part().is_zero());
            assert_eq!(l.bottom().invariant_factors().free_rank, 1);
        }
    }

    #[test]
    fn polynomial_bottoms() {
        let q = PolyRing::new(Rationals, "x");
        let alg = Algebra::base_ring(q.clone());
        let t = Tower::build(&SmithIdeal::new(&alg, alloc::vec![q.var_pow(1)]), 2).unwrap();
        for (n, l) in t.levels.iter().enumerate() {
            assert_eq!(l.bottom().invariant_factors().torsion, alloc::vec![q.var_pow(n + 1)]);
        }
    }

    #[test]
    fn graded_pieces_and_sequences() {
        let z8 = Algebra::quotient(Integers, zi(8));
        let j = SmithIdeal::new(&z8, alloc::vec![zi(2)]);
        let t = Tower::build(&j, 4).unwrap();
        let g1 = GradedPiece::compute(&j, 1).unwrap();
        assert_eq!(g1.module.invariant_factors().torsion, alloc::vec![zi(2)]);
        for n in 0..=4 {
            let g = GradedPiece::compute(&j, n).unwrap();
            assert!(g.comparison_iso);
            if n >= 3 {
                assert!(g.module.is_zero());
            }
            if n >= 1 {
                let s = g.sequence(&j, &t).unwrap();
                assert!(s.is_exact(), "n = {n}");
                assert_eq!(s.literal_top_exact, g.module.is_zero());
            }
        }
        let f2 = PolyRing::new(PrimeField::new(2).unwrap(), "x");
        let alg = Algebra::quotient(f2.clone(), f2.var_pow(4));
        let j = SmithIdeal::new(&alg, alloc::vec![f2.var_pow(1)]);
        let t = Tower::build(&j, 5).unwrap();
        for n in 1..=5 {
            let g = GradedPiece::compute(&j, n).unwrap();
            assert!(g.comparison_iso && g.sequence(&j, &t).unwrap().is_exact());
        }
    }

    #[test]
    fn module_tower() {
        let z = Algebra::base_ring(Integers);
        let j = SmithIdeal::new(&z, alloc::vec![zi(3)]);
        let t = Tower::build(&j, 3).unwrap();
        let m = FpModule::cyclic(&z, zi(3));
        let mt = AdicModuleTower::build(&t, &m).unwrap();
        assert!(mt.transitions_epic());
        for a in &mt.levels {
            assert_eq!(a.x1().invariant_factors().torsion, alloc::vec![zi(3)]);
            assert!(a.map().is_zero());
        }
        assert!(mt.consistent(&t).unwrap());
        let a = AdicModuleTower::build(&t, &FpModule::free(&z, 1)).unwrap();
        for (x, l) in a.levels.iter().zip(&t.levels) {
            assert!(x.x1().is_isomorphic(l.bottom()) && x.x0().is_isomorphic(l.ideal_part()));
        }
        for n in 0..=3 {
            assert!(a.comparison(n).unwrap().is_iso());
            let c = mt.comparison(n).unwrap();
            assert!(c.is_epi());
            assert_eq!(c.is_iso(), n == 0);
        }
    }
}
