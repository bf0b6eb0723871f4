use alloc::vec::Vec;

use super::levels::canonical_square;
use super::{SmithIdeal, TowerError, TowerLevel};
use crate::arrow::{Arrow, ArrowMap};
use crate::fpmod::{InvariantFactors, ModuleMap};
use crate::linalg::Matrix;
use crate::ring::EuclideanDomain;

/// Outcome of one iso test, with invariants of both ends for diagnostics.
#[derive(Clone, Debug)]
pub struct IsoOutcome<R: EuclideanDomain> {
    pub iso: bool,
    pub source: InvariantFactors<R>,
    pub target: InvariantFactors<R>,
}

impl<R: EuclideanDomain> IsoOutcome<R> {
    pub fn of(f: &ModuleMap<R>) -> Self {
        Self {
            iso: f.is_iso().is_iso(),
            source: f.source().invariant_factors(),
            target: f.target().invariant_factors(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LevelCheck<R: EuclideanDomain> {
    pub level: usize,
    pub top: IsoOutcome<R>,
    pub bottom: IsoOutcome<R>,
}

impl<R: EuclideanDomain> LevelCheck<R> {
    fn of(level: usize, sq: &ArrowMap<R>) -> Self {
        Self {
            level,
            top: IsoOutcome::of(sq.top()),
            bottom: IsoOutcome::of(sq.bottom()),
        }
    }

    pub fn passed(&self) -> bool {
        self.top.iso && self.bottom.iso
    }
}

/// Per-level verdict of a completeness check.
#[derive(Clone, Debug)]
pub struct CompletenessVerdict<R: EuclideanDomain> {
    pub bound: usize,
    pub levels: Vec<LevelCheck<R>>,
}

impl<R: EuclideanDomain> CompletenessVerdict<R> {
    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.passed()).map(|l| l.level)
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }
}

pub type AnalyticVerdict<R> = CompletenessVerdict<R>;

/// For each `m ≤ N`, the canonical square `Pᵐ(j) → Pᵐ(Pᴺ(j))` is an iso.
pub fn check_complete<R: EuclideanDomain>(j: &SmithIdeal<R>, bound: usize) -> Result<CompletenessVerdict<R>, TowerError> {
    let jn = j.truncated(bound);
    let levels = (0..=bound)
        .map(|m| {
            let a = TowerLevel::compute(j, m)?;
            let b = TowerLevel::compute(&jn, m)?;
            Ok(LevelCheck::of(m, &canonical_square(&a.arrow, &b.arrow)?))
        })
        .collect::<Result<Vec<_>, TowerError>>()?;
    Ok(CompletenessVerdict { bound, levels })
}

/// `Pᵐ(Pⁿ(j)) ≅ P^{min(m,n)}(j)` through the canonical square.
pub fn check_composition<R: EuclideanDomain>(j: &SmithIdeal<R>, m: usize, n: usize) -> Result<bool, TowerError> {
    let direct = TowerLevel::compute(j, m.min(n))?;
    let nested = TowerLevel::compute(&j.truncated(n), m)?;
    Ok(canonical_square(&direct.arrow, &nested.arrow)?.is_iso())
}

/// A morphism of Smith ideals `j → j'` over the same algebra, unital on the
/// ambient rings.
#[derive(Clone, Debug)]
pub struct SmithMorphism<R: EuclideanDomain> {
    pub source: SmithIdeal<R>,
    pub target: SmithIdeal<R>,
    pub map: ArrowMap<R>,
}

impl<R: EuclideanDomain> SmithMorphism<R> {
    /// `bottom` is the 1×1 matrix of `A/J → A/J'`; the top is the unique lift.
    pub fn new(source: &SmithIdeal<R>, target: &SmithIdeal<R>, bottom: Matrix<R>) -> Result<Self, TowerError> {
        let b = ModuleMap::new(source.ambient(), target.ambient(), bottom)?;
        let one = b.apply(&[source.ring().one()]);
        let r = source.ring();
        if !target.ambient().is_zero_elem(&[r.sub(&one[0], &r.one())]) {
            return Err(TowerError::NotUnital);
        }
        let (sa, ta) = (source.arrow(), target.arrow());
        let top = b
            .compose(sa.map())
            .lift_through(ta.map())
            .ok_or(TowerError::NotIdealRespecting)?;
        let map = ArrowMap::new(&sa, &ta, top, b)?;
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    /// Validates a given square.
    pub fn from_square(source: &SmithIdeal<R>, target: &SmithIdeal<R>, map: ArrowMap<R>) -> Result<Self, TowerError> {
        let m = Self::new(source, target, map.bottom().matrix().clone())?;
        let top = ModuleMap::new(source.ideal(), target.ideal(), map.top().matrix().clone())?;
        if !top.same_as(m.map.top()) {
            return Err(TowerError::NotIdealRespecting);
        }
        Ok(m)
    }

    /// `Pⁿ(φ)`
    pub fn level_map(&self, n: usize) -> Result<ArrowMap<R>, TowerError> {
        let a = TowerLevel::compute(&self.source, n)?;
        let b = TowerLevel::compute(&self.target, n)?;
        Ok(self.level_map_between(&a.arrow, &b.arrow)?)
    }

    fn level_map_between(&self, a: &Arrow<R>, b: &Arrow<R>) -> Result<ArrowMap<R>, TowerError> {
        let top = ModuleMap::new(a.x0(), b.x0(), self.map.top().matrix().clone())?;
        let bottom = ModuleMap::new(a.x1(), b.x1(), self.map.bottom().matrix().clone())?;
        Ok(ArrowMap::new(a, b, top, bottom)?)
    }

    /// `Pⁿ(φ)` tested for `n ≤ N`; every level is reported.
    pub fn check_analytic_equivalence(&self, bound: usize) -> Result<AnalyticVerdict<R>, TowerError> {
        let levels = (0..=bound)
            .map(|n| Ok(LevelCheck::of(n, &self.level_map(n)?)))
            .collect::<Result<Vec<_>, TowerError>>()?;
        Ok(CompletenessVerdict { bound, levels })
    }
}

/// The three Yekutieli modules at truncation `N`: the image of `Iⁿ` in
/// `A/Iᴺ⁺¹`, the n-th power of the image of `I`, and `Iⁿ/Iᴺ⁺¹`, with the
/// canonical maps `(c) → (a) → (b)`.
#[derive(Clone, Debug)]
pub struct YekutieliVerdict<R: EuclideanDomain> {
    pub n: usize,
    pub bound: usize,
    pub image_of_power: InvariantFactors<R>,
    pub power_of_image: InvariantFactors<R>,
    pub truncated_limit: InvariantFactors<R>,
    pub limit_to_image: bool,
    pub image_to_power: bool,
}

impl<R: EuclideanDomain> YekutieliVerdict<R> {
    pub fn passed(&self) -> bool {
        self.limit_to_image && self.image_to_power
    }
}

pub fn yekutieli_compare<R: EuclideanDomain>(
    j: &SmithIdeal<R>,
    n: usize,
    bound: usize,
) -> Result<YekutieliVerdict<R>, TowerError> {
    assert!(1 <= n && n <= bound);
    let r = j.ring();
    let q = j.quotient_ambient(bound);
    let prods: Vec<R::Elem> = j.products(n).into_iter().map(|(_, p)| p).collect();
    let k = prods.len();
    let a = q.span(&Matrix::from_rows(r, alloc::vec![prods], k)).module;
    let b = j.truncated(bound).power(n).module;
    let c = ModuleMap::new(&j.power(bound + 1).module, &j.power(n).module, j.power_in_power(bound + 1, n))?
        .cokernel()
        .module;
    let ca = ModuleMap::new(&c, &a, Matrix::identity(r, k))?;
    let ab = ModuleMap::new(&a, &b, Matrix::identity(r, k))?;
    Ok(YekutieliVerdict {
        n,
        bound,
        image_of_power: a.invariant_factors(),
        power_of_image: b.invariant_factors(),
        truncated_limit: c.invariant_factors(),
        limit_to_image: ca.is_iso().is_iso(),
        image_to_power: ab.is_iso().is_iso(),
    })
}
