use alloc::vec::Vec;

use super::{preimage, tensor, FpError, FpModule, IsoVerdict, ModuleMap};
use crate::linalg::{Matrix, Solver};
use crate::ring::EuclideanDomain;

/// `Hom(M, N)` as a finitely presented module.
///
/// Generator `k` is the homomorphism whose matrix, read row-major, is column
/// `k` of `basis`.
#[derive(Clone, Debug)]
pub struct HomModule<R: EuclideanDomain> {
    pub module: FpModule<R>,
    basis: Matrix<R>,
    null: Matrix<R>,
    source: FpModule<R>,
    target: FpModule<R>,
}

/// Internal hom. Over `R/(f)` this is the `A`-linear hom, which coincides with
/// the `R`-linear one on `A`-modules.
pub fn hom_module<R: EuclideanDomain>(m: &FpModule<R>, n: &FpModule<R>) -> Result<HomModule<R>, FpError> {
    if m.algebra() != n.algebra() {
        return Err(FpError::AlgebraMismatch);
    }
    let r = m.ring();
    let (g, h) = (m.gens(), n.gens());
    let (rm, rn) = (m.rels().cols(), n.rels().cols());
    let nphi = h * g;
    // φ·P_M = P_N·Y, unknowns φ (row-major) then Y (row-major)
    let mut sys = Matrix::zeros(r, h * rm, nphi + rn * rm);
    for a in 0..h {
        for c in 0..rm {
            let eq = a * rm + c;
            for i in 0..g {
                sys.set(eq, a * g + i, m.rels().get(i, c).clone());
            }
            for k in 0..rn {
                sys.set(eq, nphi + k * rm + c, r.neg(n.rels().get(a, k)));
            }
        }
    }
    let phi = if rm == 0 {
        Matrix::identity(r, nphi)
    } else {
        preimage(&sys.select_columns(&(0..nphi).collect::<Vec<_>>()), &sys.select_columns(&(nphi..nphi + rn * rm).collect::<Vec<_>>()))
    };
    // maps landing in the relations of N: φ = P_N·ψ
    let null = Matrix::from_fn(r, nphi, rn * g, |row, col| {
        let (a, i) = (row / g, row % g);
        let (k, i2) = (col / g, col % g);
        if i == i2 {
            n.rels().get(a, k).clone()
        } else {
            r.zero()
        }
    });
    let rels = preimage(&phi, &null);
    let raw = FpModule::raw(m.algebra(), phi.cols(), rels);
    let s = raw.simplify();
    let basis = phi.mul(s.from.matrix());
    Ok(HomModule {
        module: s.module,
        basis,
        null,
        source: m.clone(),
        target: n.clone(),
    })
}

impl<R: EuclideanDomain> HomModule<R> {
    pub fn source(&self) -> &FpModule<R> {
        &self.source
    }

    pub fn target(&self) -> &FpModule<R> {
        &self.target
    }

    /// The homomorphism represented by a vector in the generators of `module`.
    pub fn to_map(&self, z: &[R::Elem]) -> ModuleMap<R> {
        let v = self.basis.mul_vec(z);
        let g = self.source.gens();
        let m = Matrix::from_fn(self.source.ring(), self.target.gens(), g, |a, i| v[a * g + i].clone());
        ModuleMap::raw(&self.source, &self.target, m)
    }

    /// Coordinates of a homomorphism in the generators of `module`.
    pub fn from_map(&self, f: &ModuleMap<R>) -> Vec<R::Elem> {
        let g = self.source.gens();
        let h = self.target.gens();
        let mut v = Vec::with_capacity(g * h);
        for a in 0..h {
            for i in 0..g {
                v.push(f.matrix().get(a, i).clone());
            }
        }
        let x = Solver::new(&self.basis.hconcat(&self.null))
            .solve(&v)
            .expect("shape")
            .expect("every homomorphism is a combination of the hom generators");
        x[..self.basis.cols()].to_vec()
    }

    /// `Hom(A, N) → N`, evaluation at `1`; only meaningful when the source is `A¹`.
    pub fn evaluation_at_unit(&self) -> ModuleMap<R> {
        assert_eq!(self.source.gens(), 1);
        ModuleMap::raw(&self.module, &self.target, self.basis.clone())
    }
}

/// The currying map `Hom(M ⊗ N, P) → Hom(M, Hom(N, P))` and its iso verdict.
pub fn curry<R: EuclideanDomain>(
    m: &FpModule<R>,
    n: &FpModule<R>,
    p: &FpModule<R>,
) -> Result<(ModuleMap<R>, IsoVerdict<R>), FpError> {
    let mn = tensor(m, n)?;
    let left = hom_module(&mn, p)?;
    let inner = hom_module(n, p)?;
    let right = hom_module(m, &inner.module)?;
    let r = m.ring();
    let (g, h) = (m.gens(), n.gens());
    let mut cols = Vec::with_capacity(left.module.gens());
    for k in 0..left.module.gens() {
        let mut e = alloc::vec![r.zero(); left.module.gens()];
        e[k] = r.one();
        let phi = left.to_map(&e);
        let psi_cols: Vec<Vec<R::Elem>> = (0..g)
            .map(|i| {
                let block = phi.matrix().select_columns(&(i * h..(i + 1) * h).collect::<Vec<_>>());
                inner.from_map(&ModuleMap::raw(n, p, block))
            })
            .collect();
        let psi = ModuleMap::raw(m, &inner.module, Matrix::from_columns(r, inner.module.gens(), &psi_cols));
        cols.push(right.from_map(&psi));
    }
    let map = ModuleMap::new(&left.module, &right.module, Matrix::from_columns(r, right.module.gens(), &cols))?;
    let verdict = map.is_iso();
    Ok((map, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::Algebra;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    fn cyc(n: i64) -> FpModule<Integers> {
        FpModule::cyclic(&Algebra::base_ring(Integers), BigInt::from(n))
    }

    #[test]
    fn hom_between_cyclics() {
        let h = hom_module(&cyc(4), &cyc(6)).unwrap();
        assert_eq!(h.module.invariant_factors().torsion, alloc::vec![BigInt::from(2)]);
        let z = FpModule::free(&Algebra::base_ring(Integers), 1);
        assert!(hom_module(&cyc(2), &z).unwrap().module.is_zero());
    }

    #[test]
    fn hom_from_unit_is_evaluation() {
        let alg = Algebra::base_ring(Integers);
        let a1 = FpModule::free(&alg, 1);
        let m = crate::fpmod::direct_sum(&cyc(3), &FpModule::free(&alg, 1)).unwrap().module;
        let h = hom_module(&a1, &m).unwrap();
        assert!(h.evaluation_at_unit().is_iso().is_iso());
    }

    #[test]
    fn round_trip_through_coordinates() {
        let h = hom_module(&cyc(12), &cyc(18)).unwrap();
        let f = ModuleMap::new(&cyc(12), &cyc(18), Matrix::from_rows(&Integers, alloc::vec![alloc::vec![BigInt::from(3)]], 1)).unwrap();
        let back = h.to_map(&h.from_map(&f));
        assert!(back.same_as(&f));
    }

    #[test]
    fn currying_is_iso() {
        let (_, v) = curry(&cyc(4), &cyc(6), &cyc(8)).unwrap();
        assert!(v.is_iso());
    }
}
