//! The arrow category `Ar(C)` of module maps and commuting squares, with the
//! tensor and pushout-product monoidal structures and the `cok ⊣ ker` pair.

mod hom;
pub mod laws;

use crate::fpmod::{pushout, tensor_maps, FpError, FpModule, ModuleMap};
use crate::ring::EuclideanDomain;

pub use hom::ArrowHom;

/// An object `X₀ → X₁` of `Ar(C)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrow<R: EuclideanDomain> {
    map: ModuleMap<R>,
}

/// A commuting square from `source` to `target`.
#[derive(Clone, Debug)]
pub struct ArrowMap<R: EuclideanDomain> {
    source: Arrow<R>,
    target: Arrow<R>,
    top: ModuleMap<R>,
    bottom: ModuleMap<R>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    L0,
    L1,
    U0,
    U1,
}

impl<R: EuclideanDomain> Arrow<R> {
    pub fn new(map: ModuleMap<R>) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &ModuleMap<R> {
        &self.map
    }

    /// `Ev₀`
    pub fn x0(&self) -> &FpModule<R> {
        self.map.source()
    }

    /// `Ev₁`
    pub fn x1(&self) -> &FpModule<R> {
        self.map.target()
    }

    pub fn embed(which: Embedding, m: &FpModule<R>) -> Self {
        let zero = FpModule::zero(m.algebra());
        let map = match which {
            Embedding::L0 | Embedding::U1 => ModuleMap::identity(m),
            Embedding::L1 => ModuleMap::zero(&zero, m),
            Embedding::U0 => ModuleMap::zero(m, &zero),
        };
        Self { map }
    }

    pub fn identity_map(&self) -> ArrowMap<R> {
        ArrowMap {
            source: self.clone(),
            target: self.clone(),
            top: ModuleMap::identity(self.x0()),
            bottom: ModuleMap::identity(self.x1()),
        }
    }

    pub fn is_mono(&self) -> bool {
        self.map.is_injective()
    }

    /// `(X₁ → Coker f)`
    pub fn cok(&self) -> Self {
        Self {
            map: self.map.cokernel().projection,
        }
    }

    /// `(Ker f → X₀)`
    pub fn ker(&self) -> Self {
        Self {
            map: self.map.kernel().inclusion,
        }
    }
}

impl<R: EuclideanDomain> ArrowMap<R> {
    /// Checks that the square commutes.
    pub fn new(
        source: &Arrow<R>,
        target: &Arrow<R>,
        top: ModuleMap<R>,
        bottom: ModuleMap<R>,
    ) -> Result<Self, FpError> {
        if top.source() != source.x0()
            || top.target() != target.x0()
            || bottom.source() != source.x1()
            || bottom.target() != target.x1()
        {
            return Err(FpError::NotComposable);
        }
        let s = Self::raw(source, target, top, bottom);
        if !s.commutes() {
            return Err(FpError::NotCommuting);
        }
        Ok(s)
    }

    pub(crate) fn raw(source: &Arrow<R>, target: &Arrow<R>, top: ModuleMap<R>, bottom: ModuleMap<R>) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            top,
            bottom,
        }
    }

    /// `bottom ∘ f = g ∘ top` as homomorphisms.
    pub fn commutes(&self) -> bool {
        self.bottom
            .compose(self.source.map())
            .same_as(&self.target.map().compose(&self.top))
    }

    pub fn source(&self) -> &Arrow<R> {
        &self.source
    }

    pub fn target(&self) -> &Arrow<R> {
        &self.target
    }

    pub fn top(&self) -> &ModuleMap<R> {
        &self.top
    }

    pub fn bottom(&self) -> &ModuleMap<R> {
        &self.bottom
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &Self) -> Self {
        Self::raw(
            &first.source,
            &self.target,
            self.top.compose(&first.top),
            self.bottom.compose(&first.bottom),
        )
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.top.same_as(&other.top) && self.bottom.same_as(&other.bottom)
    }

    /// Both components are isomorphisms.
    pub fn is_iso(&self) -> bool {
        self.top.is_iso().is_iso() && self.bottom.is_iso().is_iso()
    }

    pub fn is_epi(&self) -> bool {
        self.top.is_surjective() && self.bottom.is_surjective()
    }

    pub fn is_mono(&self) -> bool {
        self.top.is_injective() && self.bottom.is_injective()
    }

    /// `cok` on squares: `(bottom, induced map of cokernels)`.
    pub fn cok(&self) -> Self {
        let s = self.source.cok();
        let t = self.target.cok();
        let induced = ModuleMap::raw(s.x1(), t.x1(), self.bottom.matrix().clone());
        Self::raw(&s, &t, self.bottom.clone(), induced)
    }

    /// `ker` on squares: `(induced map of kernels, top)`.
    pub fn ker(&self) -> Self {
        let s = self.source.ker();
        let t = self.target.ker();
        let induced = self
            .top
            .compose(s.map())
            .lift_through(t.map())
            .expect("kernels are functorial");
        Self::raw(&s, &t, induced, self.top.clone())
    }
}

/// `f ⊗ g : X₀⊗Y₀ → X₁⊗Y₁`.
pub fn tensor_arrows<R: EuclideanDomain>(a: &Arrow<R>, b: &Arrow<R>) -> Result<Arrow<R>, FpError> {
    let direct = tensor_maps(a.map(), b.map())?;
    let route = tensor_maps(a.map(), &ModuleMap::identity(b.x1()))?
        .compose(&tensor_maps(&ModuleMap::identity(a.x0()), b.map())?);
    assert_eq!(direct.matrix(), route.matrix());
    Ok(Arrow::new(direct))
}

/// Tensor of squares.
pub fn tensor_arrow_maps<R: EuclideanDomain>(p: &ArrowMap<R>, q: &ArrowMap<R>) -> Result<ArrowMap<R>, FpError> {
    let s = tensor_arrows(&p.source, &q.source)?;
    let t = tensor_arrows(&p.target, &q.target)?;
    Ok(ArrowMap::raw(
        &s,
        &t,
        tensor_maps(&p.top, &q.top)?,
        tensor_maps(&p.bottom, &q.bottom)?,
    ))
}

/// `a □ b` with its pushout legs.
#[derive(Clone, Debug)]
pub struct PushoutProduct<R: EuclideanDomain> {
    pub arrow: Arrow<R>,
    /// `X₀⊗Y₁ → P`
    pub left: ModuleMap<R>,
    /// `X₁⊗Y₀ → P`
    pub right: ModuleMap<R>,
}

/// `(X₀⊗Y₁) ⨿_{X₀⊗Y₀} (X₁⊗Y₀) → X₁⊗Y₁`. The source is presented on the
/// generators of `X₀⊗Y₁` followed by those of `X₁⊗Y₀`.
pub fn pushout_product<R: EuclideanDomain>(a: &Arrow<R>, b: &Arrow<R>) -> Result<PushoutProduct<R>, FpError> {
    let id_x0 = ModuleMap::identity(a.x0());
    let id_x1 = ModuleMap::identity(a.x1());
    let id_y0 = ModuleMap::identity(b.x0());
    let id_y1 = ModuleMap::identity(b.x1());
    let into_left = tensor_maps(&id_x0, b.map())?;
    let into_right = tensor_maps(a.map(), &id_y0)?;
    let po = pushout(&into_left, &into_right)?;
    let u = tensor_maps(a.map(), &id_y1)?;
    let v = tensor_maps(&id_x1, b.map())?;
    let induced = po.induced(&u, &v)?;
    debug_assert!(u.compose(&into_left).same_as(&v.compose(&into_right)));
    Ok(PushoutProduct {
        arrow: Arrow::new(induced),
        left: po.left,
        right: po.right,
    })
}

/// `p □ q` on squares.
pub fn pushout_product_maps<R: EuclideanDomain>(
    p: &ArrowMap<R>,
    q: &ArrowMap<R>,
) -> Result<ArrowMap<R>, FpError> {
    let s = pushout_product(&p.source, &q.source)?.arrow;
    let t = pushout_product(&p.target, &q.target)?.arrow;
    let top = tensor_maps(&p.top, &q.bottom)?
        .matrix()
        .block_diag(tensor_maps(&p.bottom, &q.top)?.matrix());
    let top = ModuleMap::new(s.x0(), t.x0(), top)?;
    let bottom = tensor_maps(&p.bottom, &q.bottom)?;
    ArrowMap::new(&s, &t, top, bottom)
}

/// Unit of `cok ⊣ ker`: `a → ker(cok a)`.
pub fn unit<R: EuclideanDomain>(a: &Arrow<R>) -> ArrowMap<R> {
    let kc = a.cok().ker();
    let top = a.map().lift_through(kc.map()).expect("f lands in the kernel of its cokernel");
    ArrowMap::raw(a, &kc, top, ModuleMap::identity(a.x1()))
}

/// Counit of `cok ⊣ ker`: `cok(ker b) → b`.
pub fn counit<R: EuclideanDomain>(b: &Arrow<R>) -> ArrowMap<R> {
    let ck = b.ker().cok();
    let bottom = b
        .map()
        .descend_through(ck.map())
        .expect("g kills the kernel of g");
    ArrowMap::raw(&ck, b, ModuleMap::identity(b.x0()), bottom)
}

impl<R: EuclideanDomain> From<ModuleMap<R>> for Arrow<R> {
    fn from(map: ModuleMap<R>) -> Self {
        Self::new(map)
    }
}
