use adic_smith_core::fpmod::{direct_sum, hom_module, tensor, Algebra, FpModule, InvariantFactors, ModuleMap};
use adic_smith_core::linalg::Matrix;
use adic_smith_core::ring::Integers;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn zi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn order(inv: &InvariantFactors<Integers>) -> Option<BigInt> {
    (inv.free_rank == 0).then(|| inv.torsion.iter().fold(zi(1), |a, d| a * d))
}

fn diag(alg: &Algebra<Integers>, ds: &[i64]) -> FpModule<Integers> {
    FpModule::diagonal(alg, &ds.iter().map(|&d| zi(d)).collect::<Vec<_>>())
}

/// A product of elementary column operations, with entries in `-2..=2`.
fn shear(n: usize, ops: &[(usize, usize, i64)]) -> Matrix<Integers> {
    let mut u = Matrix::identity(&Integers, n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(&Integers, n);
        e.set(i, j, zi(c));
        u = u.mul(&e);
    }
    u
}

fn cyclic_orders() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2i64..=12, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Changing the presentation by unimodular operations keeps the module.
    #[test]
    fn presentation_invariance(
        ds in cyclic_orders(),
        col_ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
        row_ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
    ) {
        let z = Algebra::base_ring(Integers);
        let m = diag(&z, &ds);
        let n = ds.len();
        let rels = shear(n, &row_ops).mul(m.rels()).mul(&shear(m.rels().cols(), &col_ops));
        let m2 = FpModule::new(&z, n, rels).unwrap();
        prop_assert!(m.is_isomorphic(&m2));
        let expect = ds.iter().fold(zi(1), |a, &d| a * d);
        prop_assert_eq!(order(&m2.invariant_factors()), Some(expect));
    }

    /// `|A ⊗ B| = |Hom(A, B)| = ∏ gcd(aᵢ, bⱼ)` for finite cyclic sums.
    #[test]
    fn tensor_and_hom_orders(a in cyclic_orders(), b in cyclic_orders()) {
        let z = Algebra::base_ring(Integers);
        let (ma, mb) = (diag(&z, &a), diag(&z, &b));
        let expect = a.iter().flat_map(|x| b.iter().map(move |y| x.gcd(y))).fold(zi(1), |acc, g| acc * g);
        prop_assert_eq!(order(&tensor(&ma, &mb).unwrap().invariant_factors()), Some(expect.clone()));
        prop_assert_eq!(order(&hom_module(&ma, &mb).unwrap().module.invariant_factors()), Some(expect));
        let s = direct_sum(&ma, &mb).unwrap();
        let total = a.iter().chain(&b).fold(zi(1), |acc, &d| acc * d);
        prop_assert_eq!(order(&s.module.invariant_factors()), Some(total));
    }

    /// Over `Z/n` the implicit relations `n·eᵢ` are part of the presentation.
    #[test]
    fn algebra_relations_materialize(n in 2i64..=30, ds in cyclic_orders()) {
        let alg = Algebra::quotient(Integers, zi(n));
        let m = diag(&alg, &ds);
        let expect = ds.iter().fold(zi(1), |acc, d| acc * d.gcd(&n));
        prop_assert_eq!(order(&m.invariant_factors()), Some(expect));
        let z = Algebra::base_ring(Integers);
        let gcds: Vec<i64> = ds.iter().map(|d| d.gcd(&n)).collect();
        prop_assert!(FpModule::new(&z, m.gens(), m.rels().clone()).unwrap().is_isomorphic(&diag(&z, &gcds)));
    }

    /// `0 → ker → Z/m → Z/m → cok → 0` for multiplication by `c`.
    #[test]
    fn scalar_maps(m in 2i64..=40, c in 0i64..=40) {
        let z = Algebra::base_ring(Integers);
        let zm = diag(&z, &[m]);
        let f = ModuleMap::scalar(&zm, &zi(c));
        let g = c.gcd(&m);
        prop_assert_eq!(order(&f.cokernel().module.invariant_factors()), Some(zi(g)));
        prop_assert_eq!(order(&f.kernel().module.invariant_factors()), Some(zi(g)));
        prop_assert_eq!(f.is_iso().is_iso(), g == 1);
        let k = f.kernel();
        prop_assert!(f.compose(&k.inclusion).is_zero());
        prop_assert!(k.inclusion.is_injective());
    }
}

#[test]
fn ill_defined_maps_are_rejected() {
    let z = Algebra::base_ring(Integers);
    let (z4, z6) = (diag(&z, &[4]), diag(&z, &[6]));
    assert!(ModuleMap::new(&z4, &z6, Matrix::identity(&Integers, 1)).is_err());
    let three = Matrix::from_rows(&Integers, vec![vec![zi(3)]], 1);
    assert!(ModuleMap::new(&z4, &z6, three).is_ok());
}
