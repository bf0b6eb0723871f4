use alloc::vec::Vec;

use super::{Arrow, ArrowMap};
use crate::fpmod::{direct_sum, hom_module, FpError, FpModule, HomModule, ModuleMap};
use crate::linalg::Matrix;
use crate::ring::EuclideanDomain;

/// `Hom_Ar(a, b)`: pairs `(top, bottom)` with `bottom ∘ f = g ∘ top`, as the
/// kernel of `Hom(X₀,Y₀) ⊕ Hom(X₁,Y₁) → Hom(X₀,Y₁)`.
#[derive(Clone, Debug)]
pub struct ArrowHom<R: EuclideanDomain> {
    pub module: FpModule<R>,
    /// `module → Hom(X₀, Y₀)`
    pub top: ModuleMap<R>,
    /// `module → Hom(X₁, Y₁)`
    pub bottom: ModuleMap<R>,
    h0: HomModule<R>,
    h1: HomModule<R>,
    source: Arrow<R>,
    target: Arrow<R>,
}

impl<R: EuclideanDomain> ArrowHom<R> {
    pub fn new(a: &Arrow<R>, b: &Arrow<R>) -> Result<Self, FpError> {
        let h0 = hom_module(a.x0(), b.x0())?;
        let h1 = hom_module(a.x1(), b.x1())?;
        let h01 = hom_module(a.x0(), b.x1())?;
        let sum = direct_sum(&h0.module, &h1.module)?;
        let r = a.x0().ring();
        let unit = |n: usize, k: usize| {
            let mut e = alloc::vec![r.zero(); n];
            e[k] = r.one();
            e
        };
        let mut cols: Vec<Vec<R::Elem>> = Vec::new();
        for k in 0..h0.module.gens() {
            let t = h0.to_map(&unit(h0.module.gens(), k));
            cols.push(h01.from_map(&b.map().compose(&t).neg()));
        }
        for k in 0..h1.module.gens() {
            let s = h1.to_map(&unit(h1.module.gens(), k));
            cols.push(h01.from_map(&s.compose(a.map())));
        }
        let defect = ModuleMap::new(&sum.module, &h01.module, Matrix::from_columns(r, h01.module.gens(), &cols))?;
        let k = defect.kernel();
        Ok(Self {
            top: sum.proj[0].compose(&k.inclusion),
            bottom: sum.proj[1].compose(&k.inclusion),
            module: k.module,
            h0,
            h1,
            source: a.clone(),
            target: b.clone(),
        })
    }

    pub fn hom_top(&self) -> &HomModule<R> {
        &self.h0
    }

    pub fn hom_bottom(&self) -> &HomModule<R> {
        &self.h1
    }

    /// The square represented by a vector in the generators of `module`.
    pub fn to_square(&self, z: &[R::Elem]) -> ArrowMap<R> {
        let top = self.h0.to_map(&self.top.apply(z));
        let bottom = self.h1.to_map(&self.bottom.apply(z));
        ArrowMap::raw(&self.source, &self.target, top, bottom)
    }
}
