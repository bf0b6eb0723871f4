use alloc::vec::Vec;

use super::{preimage, FpError, FpModule, ModuleMap};
use crate::linalg::{Matrix, Solver};
use crate::ring::EuclideanDomain;

/// Submodule with its inclusion.
#[derive(Clone, Debug)]
pub struct Kernel<R: EuclideanDomain> {
    pub module: FpModule<R>,
    pub inclusion: ModuleMap<R>,
}

/// Submodule spanned by given vectors, presented on exactly those vectors.
#[derive(Clone, Debug)]
pub struct Submodule<R: EuclideanDomain> {
    pub module: FpModule<R>,
    pub inclusion: ModuleMap<R>,
}

/// Quotient with its projection; generators are those of the target.
#[derive(Clone, Debug)]
pub struct Cokernel<R: EuclideanDomain> {
    pub module: FpModule<R>,
    pub projection: ModuleMap<R>,
}

/// `source ↠ image ↪ target`.
#[derive(Clone, Debug)]
pub struct Image<R: EuclideanDomain> {
    pub module: FpModule<R>,
    pub inclusion: ModuleMap<R>,
    pub corestriction: ModuleMap<R>,
}

#[derive(Clone, Debug)]
pub struct DirectSum<R: EuclideanDomain> {
    pub module: FpModule<R>,
    pub inj: [ModuleMap<R>; 2],
    pub proj: [ModuleMap<R>; 2],
}

/// `X → P ← Y` for a span `X ← S → Y`.
#[derive(Clone, Debug)]
pub struct Pushout<R: EuclideanDomain> {
    pub module: FpModule<R>,
    pub left: ModuleMap<R>,
    pub right: ModuleMap<R>,
}

/// `X ← Q → Y` for a cospan `X → Z ← Y`.
#[derive(Clone, Debug)]
pub struct Pullback<R: EuclideanDomain> {
    pub module: FpModule<R>,
    pub left: ModuleMap<R>,
    pub right: ModuleMap<R>,
}

impl<R: EuclideanDomain> ModuleMap<R> {
    pub fn kernel(&self) -> Kernel<R> {
        let src = self.source();
        let k0 = preimage(self.matrix(), self.target().rels());
        let rels = src.relations_of(&k0);
        let raw = FpModule::raw(src.algebra(), k0.cols(), rels);
        let s = raw.simplify();
        let inclusion = ModuleMap::raw(&raw, src, k0).compose(&s.from);
        Kernel {
            module: s.module,
            inclusion,
        }
    }

    pub fn cokernel(&self) -> Cokernel<R> {
        let tgt = self.target();
        let rels = tgt.rels().hconcat(self.matrix());
        let module = FpModule::raw(tgt.algebra(), tgt.gens(), rels);
        let projection = ModuleMap::raw(tgt, &module, Matrix::identity(tgt.ring(), tgt.gens()));
        Cokernel { module, projection }
    }

    pub fn image(&self) -> Image<R> {
        let src = self.source();
        let tgt = self.target();
        let rels = tgt.relations_of(self.matrix());
        let raw = FpModule::raw(src.algebra(), src.gens(), rels);
        let s = raw.simplify();
        let inclusion = ModuleMap::raw(&raw, tgt, self.matrix().clone()).compose(&s.from);
        let corestriction = s.to.compose(&ModuleMap::raw(src, &raw, Matrix::identity(src.ring(), src.gens())));
        Image {
            module: s.module,
            inclusion,
            corestriction,
        }
    }

    /// `h` with `mono ∘ h = self`, if it exists.
    pub fn lift_through(&self, mono: &ModuleMap<R>) -> Option<ModuleMap<R>> {
        assert_eq!(self.target().gens(), mono.target().gens());
        let solver = Solver::new(&mono.matrix().hconcat(mono.target().rels()));
        let k = mono.source().gens();
        let mut cols = Vec::with_capacity(self.source().gens());
        for c in self.matrix().columns() {
            let x = solver.solve(&c).expect("shape")?;
            cols.push(x[..k].to_vec());
        }
        let m = Matrix::from_columns(self.ring(), k, &cols);
        ModuleMap::new(self.source(), mono.source(), m).ok()
    }

    /// `h` with `h ∘ epi = self`, if it exists and is well defined.
    pub fn descend_through(&self, epi: &ModuleMap<R>) -> Option<ModuleMap<R>> {
        assert_eq!(self.source().gens(), epi.source().gens());
        let c = epi.target();
        let a = epi.matrix().hconcat(c.rels());
        let b = self
            .matrix()
            .hconcat(&Matrix::zeros(self.ring(), self.target().gens(), c.rels().cols()));
        let h = solve_left(&a, &b, self.target().rels())?;
        ModuleMap::new(c, self.target(), h).ok()
    }
}

/// `h` with every column of `h·a − b` in `span(p)`.
pub(crate) fn solve_left<R: EuclideanDomain>(
    a: &Matrix<R>,
    b: &Matrix<R>,
    p: &Matrix<R>,
) -> Option<Matrix<R>> {
    let r = a.ring();
    let (c, s) = a.shape();
    let y = b.rows();
    let np = p.cols();
    let unknowns = y * c + np * s;
    let mut sys = Matrix::zeros(r, y * s, unknowns);
    let mut rhs = Vec::with_capacity(y * s);
    for row in 0..y {
        for j in 0..s {
            let eq = row * s + j;
            for i in 0..c {
                sys.set(eq, row * c + i, a.get(i, j).clone());
            }
            for k in 0..np {
                sys.set(eq, y * c + k * s + j, r.neg(p.get(row, k)));
            }
            rhs.push(b.get(row, j).clone());
        }
    }
    let x = Solver::new(&sys).solve(&rhs).expect("shape")?;
    Some(Matrix::from_fn(r, y, c, |row, i| x[row * c + i].clone()))
}

impl<R: EuclideanDomain> FpModule<R> {
    /// The submodule generated by the columns of `vectors`, without
    /// simplifying its presentation.
    pub fn span(&self, vectors: &Matrix<R>) -> Submodule<R> {
        assert_eq!(vectors.rows(), self.gens());
        let module = FpModule::raw(self.algebra(), vectors.cols(), self.relations_of(vectors));
        let inclusion = ModuleMap::raw(&module, self, vectors.clone());
        Submodule { module, inclusion }
    }
}

pub fn direct_sum<R: EuclideanDomain>(m: &FpModule<R>, n: &FpModule<R>) -> Result<DirectSum<R>, FpError> {
    if m.algebra() != n.algebra() {
        return Err(FpError::AlgebraMismatch);
    }
    let r = m.ring();
    let (g, h) = (m.gens(), n.gens());
    let module = FpModule::raw(m.algebra(), g + h, m.rels().block_diag(n.rels()));
    let i1 = Matrix::identity(r, g).vconcat(&Matrix::zeros(r, h, g));
    let i2 = Matrix::zeros(r, g, h).vconcat(&Matrix::identity(r, h));
    let inj = [
        ModuleMap::raw(m, &module, i1.clone()),
        ModuleMap::raw(n, &module, i2.clone()),
    ];
    let proj = [
        ModuleMap::raw(&module, m, i1.transpose()),
        ModuleMap::raw(&module, n, i2.transpose()),
    ];
    Ok(DirectSum { module, inj, proj })
}

/// `M ⊗ N` with generator `(i, j)` at index `i·gens(N) + j`.
pub fn tensor<R: EuclideanDomain>(m: &FpModule<R>, n: &FpModule<R>) -> Result<FpModule<R>, FpError> {
    if m.algebra() != n.algebra() {
        return Err(FpError::AlgebraMismatch);
    }
    let r = m.ring();
    let left = m.rels().kronecker(&Matrix::identity(r, n.gens()));
    let right = Matrix::identity(r, m.gens()).kronecker(n.rels());
    Ok(FpModule::raw(m.algebra(), m.gens() * n.gens(), left.hconcat(&right)))
}

/// `f ⊗ g` between the tensor presentations of [`tensor`].
pub fn tensor_maps<R: EuclideanDomain>(f: &ModuleMap<R>, g: &ModuleMap<R>) -> Result<ModuleMap<R>, FpError> {
    let src = tensor(f.source(), g.source())?;
    let tgt = tensor(f.target(), g.target())?;
    Ok(ModuleMap::raw(&src, &tgt, f.matrix().kronecker(g.matrix())))
}

/// Pushout of `X ←f− S −g→ Y`, presented on the generators of `X ⊕ Y`.
pub fn pushout<R: EuclideanDomain>(f: &ModuleMap<R>, g: &ModuleMap<R>) -> Result<Pushout<R>, FpError> {
    if f.source() != g.source() {
        return Err(FpError::NotComposable);
    }
    let sum = direct_sum(f.target(), g.target())?;
    let m = f.matrix().vconcat(&g.matrix().neg());
    let rels = sum.module.rels().hconcat(&m);
    let module = FpModule::raw(sum.module.algebra(), sum.module.gens(), rels);
    let left = ModuleMap::raw(f.target(), &module, sum.inj[0].matrix().clone());
    let right = ModuleMap::raw(g.target(), &module, sum.inj[1].matrix().clone());
    Ok(Pushout { module, left, right })
}

impl<R: EuclideanDomain> Pushout<R> {
    /// The map `P → T` out of a cocone `u: X → T`, `v: Y → T`.
    pub fn induced(&self, u: &ModuleMap<R>, v: &ModuleMap<R>) -> Result<ModuleMap<R>, FpError> {
        ModuleMap::new(&self.module, u.target(), u.matrix().hconcat(v.matrix()))
    }
}

/// Pullback of `X −f→ Z ←g− Y`.
pub fn pullback<R: EuclideanDomain>(f: &ModuleMap<R>, g: &ModuleMap<R>) -> Result<Pullback<R>, FpError> {
    if f.target() != g.target() {
        return Err(FpError::NotComposable);
    }
    let sum = direct_sum(f.source(), g.source())?;
    let d = ModuleMap::raw(
        &sum.module,
        f.target(),
        f.matrix().hconcat(&g.matrix().neg()),
    );
    let k = d.kernel();
    let left = sum.proj[0].compose(&k.inclusion);
    let right = sum.proj[1].compose(&k.inclusion);
    Ok(Pullback {
        module: k.module,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::Algebra;
    use crate::ring::{Integers, PolyRing, PrimeField};
    use alloc::vec;
    use num_bigint::BigInt;

    fn z() -> Algebra<Integers> {
        Algebra::base_ring(Integers)
    }

    fn zi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn cyc(n: i64) -> FpModule<Integers> {
        FpModule::cyclic(&z(), zi(n))
    }

    fn torsion(m: &FpModule<Integers>) -> Vec<i64> {
        m.invariant_factors()
            .torsion
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    fn map(s: &FpModule<Integers>, t: &FpModule<Integers>, rows: &[&[i64]]) -> ModuleMap<Integers> {
        let m = Matrix::from_rows(
            &Integers,
            rows.iter().map(|r| r.iter().map(|&x| zi(x)).collect()).collect(),
            s.gens(),
        );
        ModuleMap::new(s, t, m).unwrap()
    }

    #[test]
    fn tensor_of_cyclics() {
        let t = tensor(&cyc(6), &cyc(4)).unwrap();
        assert_eq!(torsion(&t), vec![2]);
        let a1 = FpModule::free(&z(), 1);
        let m = cyc(12);
        assert!(tensor(&a1, &m).unwrap().is_isomorphic(&m));
    }

    #[test]
    fn tensor_over_f2x() {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), "x");
        let alg = Algebra::base_ring(r.clone());
        let t = tensor(&FpModule::cyclic(&alg, r.var_pow(2)), &FpModule::cyclic(&alg, r.var_pow(3))).unwrap();
        assert_eq!(t.invariant_factors().torsion, vec![r.var_pow(2)]);
    }

    #[test]
    fn kernels() {
        let zz = FpModule::free(&z(), 1);
        assert!(map(&zz, &zz, &[&[2]]).kernel().module.is_zero());

        let k = map(&zz, &cyc(2), &[&[1]]).kernel();
        assert_eq!(k.module.invariant_factors().free_rank, 1);
        assert!(k.inclusion.is_injective());

        let z4 = cyc(4);
        let f = map(&z4, &z4, &[&[2]]);
        let k = f.kernel();
        assert_eq!(torsion(&k.module), vec![2]);
        assert!(f.compose(&k.inclusion).is_zero());
    }

    #[test]
    fn cokernels() {
        let zz = FpModule::free(&z(), 1);
        assert_eq!(torsion(&map(&zz, &zz, &[&[7]]).cokernel().module), vec![7]);
        assert!(ModuleMap::identity(&cyc(5)).cokernel().module.is_zero());
        let z2 = FpModule::free(&z(), 2);
        let c = map(&z2, &z2, &[&[2, 0], &[0, 3]]).cokernel();
        assert_eq!(torsion(&c.module), vec![6]);
    }

    #[test]
    fn invariant_factors() {
        assert_eq!(FpModule::free(&z(), 1).invariant_factors().free_rank, 1);
        let m = FpModule::new(
            &z(),
            2,
            Matrix::from_rows(&Integers, vec![vec![zi(4), zi(6)], vec![zi(0), zi(10)]], 2),
        )
        .unwrap();
        assert_eq!(torsion(&m), vec![2, 20]);
        let s = direct_sum(&cyc(6), &cyc(4)).unwrap();
        assert_eq!(torsion(&s.module), vec![2, 12]);
    }

    #[test]
    fn isos() {
        let m = cyc(6);
        let v = ModuleMap::identity(&m).is_iso();
        assert_eq!(v.inverse().unwrap().matrix(), ModuleMap::identity(&m).matrix());
        let zz = FpModule::free(&z(), 1);
        assert!(!map(&zz, &zz, &[&[2]]).is_iso().is_iso());
        assert!(!map(&cyc(2), &cyc(4), &[&[2]]).is_iso().is_iso());
        // 5 is a unit mod 6
        let f = map(&m, &m, &[&[5]]);
        let inv = f.is_iso().inverse().unwrap().clone();
        assert!(inv.compose(&f).same_as(&ModuleMap::identity(&m)));
    }

    #[test]
    fn ill_defined_map_names_column() {
        let err = ModuleMap::new(&cyc(4), &cyc(3), Matrix::from_rows(&Integers, vec![vec![zi(1)]], 1)).unwrap_err();
        assert_eq!(err, FpError::IllDefined { column: 0 });
    }

    #[test]
    fn pushouts() {
        let zz = FpModule::free(&z(), 1);
        let f = map(&zz, &zz, &[&[2]]);
        let g = map(&zz, &zz, &[&[3]]);
        let p = pushout(&f, &g).unwrap();
        assert_eq!(p.module.invariant_factors().free_rank, 1);
        assert!(torsion(&p.module).is_empty());
        assert!(p.left.compose(&f).same_as(&p.right.compose(&g)));

        let id = ModuleMap::identity(&zz);
        let p = pushout(&id, &g).unwrap();
        assert!(p.module.is_isomorphic(&zz));

        let m = cyc(5);
        let zero = FpModule::zero(&z());
        let p = pushout(&ModuleMap::zero(&m, &zero), &ModuleMap::zero(&m, &zero)).unwrap();
        assert!(p.module.is_zero());
    }

    #[test]
    fn universal_factorizations() {
        let z4 = cyc(4);
        let two = map(&z4, &z4, &[&[2]]);
        let k = two.kernel();
        // ×2 composed with ×2 is zero, so it factors through the kernel
        assert!(two.lift_through(&k.inclusion).is_some());
        assert!(ModuleMap::identity(&z4).lift_through(&k.inclusion).is_none());
        let c = two.cokernel();
        assert!(two.descend_through(&c.projection).is_some());
        assert!(ModuleMap::identity(&z4).descend_through(&c.projection).is_none());
    }

    #[test]
    fn exactness_image_is_kernel_of_cokernel() {
        let z4 = cyc(4);
        let z8 = cyc(8);
        let f = map(&z4, &z8, &[&[2]]);
        let im = f.image();
        let kc = f.cokernel().projection.kernel();
        let cmp = im.inclusion.lift_through(&kc.inclusion).unwrap();
        assert!(cmp.is_iso().is_iso());
    }

    #[test]
    fn pullback_of_monos_is_intersection() {
        let zz = FpModule::free(&z(), 1);
        let p = pullback(&map(&zz, &zz, &[&[4]]), &map(&zz, &zz, &[&[6]])).unwrap();
        let img = p.left.image();
        // 4a = 6b: a ∈ 3Z, the intersection 12Z
        assert_eq!(p.module.invariant_factors().free_rank, 1);
        assert!(img.module.is_isomorphic(&zz));
    }
}
