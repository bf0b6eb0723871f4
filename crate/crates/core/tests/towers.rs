use adic_smith_core::fpmod::{Algebra, FpModule, InvariantFactors};
use adic_smith_core::linalg::Matrix;
use adic_smith_core::ring::{EuclideanDomain, Integers, PolyRing, PrimeField, Rationals};
use adic_smith_core::tower::{
    check_complete, check_composition, yekutieli_compare, AdicModuleTower, GradedPiece, SmithIdeal, SmithMorphism,
    Tower,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn zi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn z() -> Algebra<Integers> {
    Algebra::base_ring(Integers)
}

fn zmod(n: i64) -> Algebra<Integers> {
    Algebra::quotient(Integers, zi(n))
}

fn f2x() -> PolyRing<PrimeField> {
    PolyRing::new(PrimeField::new(2).unwrap(), "x")
}

/// Order of a finite module over the integers.
fn order(inv: &InvariantFactors<Integers>) -> Option<BigInt> {
    (inv.free_rank == 0).then(|| inv.torsion.iter().fold(zi(1), |a, d| a * d))
}

/// k-dimension of a torsion module over k[x].
fn dim<F: adic_smith_core::ring::Field>(inv: &InvariantFactors<PolyRing<F>>) -> Option<usize> {
    (inv.free_rank == 0).then(|| inv.torsion.iter().map(|d| d.degree().unwrap_or(0)).sum())
}

// Fixed towers at N = 6.

#[test]
fn p_adic_fixtures() {
    for p in [2i64, 3, 5] {
        let j = SmithIdeal::new(&z(), vec![zi(p)]);
        let t = Tower::build(&j, 6).unwrap();
        assert!(t.transitions_epic());
        for n in 0..=6u32 {
            let level = t.level(n as usize).unwrap();
            let bottom = level.bottom().invariant_factors();
            assert_eq!(bottom.free_rank, 0);
            assert_eq!(bottom.torsion, vec![zi(p.pow(n + 1))], "p = {p}, n = {n}");
            if n >= 1 {
                let g = GradedPiece::compute(&j, n as usize).unwrap();
                assert_eq!(g.module.invariant_factors().torsion, vec![zi(p)]);
                assert!(g.comparison_iso);
                let y = yekutieli_compare(&j, n as usize, 6).unwrap();
                assert!(y.passed(), "p = {p}, n = {n}");
            }
        }
    }
}

fn polynomial_fixture<F: adic_smith_core::ring::Field>(r: PolyRing<F>)
where
    PolyRing<F>: EuclideanDomain<Elem = adic_smith_core::ring::Poly<F::Elem>>,
{
    let alg = Algebra::base_ring(r.clone());
    let j = SmithIdeal::new(&alg, vec![r.var_pow(1)]);
    let t = Tower::build(&j, 6).unwrap();
    assert!(t.transitions_epic());
    for n in 0..=6 {
        let bottom = t.level(n).unwrap().bottom().invariant_factors();
        assert_eq!(bottom.torsion, vec![r.var_pow(n + 1)]);
        if n >= 1 {
            let g = GradedPiece::compute(&j, n).unwrap();
            // the residue field k
            assert_eq!(g.module.invariant_factors().torsion, vec![r.var_pow(1)]);
            assert!(yekutieli_compare(&j, n, 6).unwrap().passed());
        }
    }
}

#[test]
fn polynomial_fixtures() {
    polynomial_fixture(PolyRing::new(Rationals, "x"));
    polynomial_fixture(f2x());
}

// Structural shadows over a corpus of (algebra, ideal) pairs.

fn shadows<R: EuclideanDomain>(name: &str, j: &SmithIdeal<R>, bound: usize) {
    let t = Tower::build(j, bound).unwrap();
    assert!(t.transitions_epic(), "{name}");
    for n in 1..=bound {
        let g = GradedPiece::compute(j, n).unwrap();
        assert!(g.comparison_iso, "{name}: (A/I)⊗Iⁿ → Iⁿ/Iⁿ⁺¹ at n = {n}");
        let s = g.sequence(j, &t).unwrap();
        assert!(s.is_exact(), "{name}: sequence at n = {n}");
    }
}

#[test]
fn structural_shadows() {
    let mut count = 0;
    let int_pairs: &[(&str, Option<i64>, &[i64])] = &[
        ("Z,(2)", None, &[2]),
        ("Z,(6)", None, &[6]),
        ("Z,(4,6)", None, &[4, 6]),
        ("Z,(1)", None, &[1]),
        ("Z,(0)", None, &[0]),
        ("Z/8,(2)", Some(8), &[2]),
        ("Z/8,(4)", Some(8), &[4]),
        ("Z/27,(3)", Some(27), &[3]),
        ("Z/27,(9)", Some(27), &[9]),
        ("Z/12,(2)", Some(12), &[2]),
        ("Z/36,(6)", Some(36), &[6]),
        ("Z/72,(2,3)", Some(72), &[2, 3]),
    ];
    for (name, m, gens) in int_pairs {
        let alg = m.map_or_else(z, zmod);
        shadows(name, &SmithIdeal::new(&alg, gens.iter().map(|&g| zi(g)).collect()), 5);
        count += 1;
    }
    let r = f2x();
    let x4 = Algebra::quotient(r.clone(), r.var_pow(4));
    shadows("F2[x]/(x^4),(x)", &SmithIdeal::new(&x4, vec![r.var_pow(1)]), 5);
    shadows("F2[x]/(x^4),(x^2)", &SmithIdeal::new(&x4, vec![r.var_pow(2)]), 5);
    let f = r.add(&r.var_pow(2), &r.add(&r.var_pow(1), &r.one()));
    let cube = r.pow(&f, 3);
    let alg = Algebra::quotient(r.clone(), cube);
    shadows("F2[x]/((x^2+x+1)^3),(x^2+x+1)", &SmithIdeal::new(&alg, vec![f]), 5);
    let q = PolyRing::new(Rationals, "x");
    let qa = Algebra::base_ring(q.clone());
    shadows("Q[x],(x)", &SmithIdeal::new(&qa, vec![q.var_pow(1)]), 5);
    shadows("Q[x],(x^2-1)", &SmithIdeal::new(&qa, vec![q.sub(&q.var_pow(2), &q.one())]), 5);
    count += 5;
    assert!(count >= 12);
}

// Completeness of the nilpotent approximation, with modules.

fn int_module(alg: &Algebra<Integers>, free: usize, torsion: &[i64]) -> FpModule<Integers> {
    let g = free + torsion.len();
    let mut rels = Matrix::zeros(&Integers, g, torsion.len());
    for (k, &d) in torsion.iter().enumerate() {
        rels.set(free + k, k, zi(d));
    }
    FpModule::new(alg, g, rels).unwrap()
}

fn completeness<R: EuclideanDomain>(name: &str, j: &SmithIdeal<R>, modules: &[FpModule<R>]) {
    const N: usize = 5;
    assert!(check_complete(j, N).unwrap().passed(), "{name}: complete-check");
    for m in 0..=N {
        for n in 0..=N {
            assert!(check_composition(j, m, n).unwrap(), "{name}: P^{m}∘P^{n}");
        }
    }
    let t = Tower::build(j, N).unwrap();
    for (k, m) in modules.iter().enumerate() {
        let adic = AdicModuleTower::build(&t, m).unwrap();
        assert!(adic.consistent(&t).unwrap(), "{name}: module {k} consistency");
        assert!(adic.transitions_epic(), "{name}: module {k} transitions");
    }
}

#[test]
fn nilpotent_approximation_is_complete() {
    let zz = z();
    let mods = [int_module(&zz, 1, &[]), int_module(&zz, 1, &[4]), int_module(&zz, 0, &[9, 27]), int_module(&zz, 2, &[6])];
    completeness("Z,(3)", &SmithIdeal::new(&zz, vec![zi(3)]), &mods);
    completeness("Z,(6)", &SmithIdeal::new(&zz, vec![zi(6)]), &mods);
    completeness("Z,(10,4)", &SmithIdeal::new(&zz, vec![zi(10), zi(4)]), &mods[..2]);
    let z8 = zmod(8);
    completeness("Z/8,(2)", &SmithIdeal::new(&z8, vec![zi(2)]), &[int_module(&z8, 1, &[]), int_module(&z8, 0, &[4])]);
    let r = f2x();
    let x4 = Algebra::quotient(r.clone(), r.var_pow(4));
    completeness("F2[x]/(x^4),(x)", &SmithIdeal::new(&x4, vec![r.var_pow(1)]), &[FpModule::free(&x4, 1)]);
    let q = PolyRing::new(Rationals, "x");
    let qa = Algebra::base_ring(q.clone());
    let xm = FpModule::cyclic(&qa, q.var_pow(3));
    completeness("Q[x],(x)", &SmithIdeal::new(&qa, vec![q.var_pow(1)]), &[FpModule::free(&qa, 1), xm]);
}

#[test]
fn adic_module_orders() {
    // M = Z ⊕ Z/4 ⊕ Z/9 at (3): |M/3ⁿ⁺¹M| = 3ⁿ⁺¹·9 once n ≥ 1
    let zz = z();
    let j = SmithIdeal::new(&zz, vec![zi(3)]);
    let t = Tower::build(&j, 5).unwrap();
    let m = int_module(&zz, 1, &[4, 9]);
    let adic = AdicModuleTower::build(&t, &m).unwrap();
    for n in 0..=5u32 {
        let q = 3i64.pow(n + 1);
        let expect = q * q.gcd(&4) * q.gcd(&9);
        assert_eq!(order(&adic.levels[n as usize].x1().invariant_factors()), Some(zi(expect)));
    }
}

#[test]
fn negative_control() {
    let zz = z();
    let p = SmithIdeal::new(&zz, vec![zi(3)]);
    let p2 = SmithIdeal::new(&zz, vec![zi(9)]);
    // the identity of Z does not carry (3) into (9)
    assert!(SmithMorphism::new(&p, &p2, Matrix::identity(&Integers, 1)).is_err());
    let phi = SmithMorphism::new(&p2, &p, Matrix::identity(&Integers, 1)).unwrap();
    let v = phi.check_analytic_equivalence(3).unwrap();
    assert!(!v.passed());
    let l1 = &v.levels[1];
    assert!(!l1.top.iso);
    assert_eq!(l1.top.source.torsion, vec![zi(9)]);
    assert_eq!(l1.top.target.torsion, vec![zi(3)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `A/Iⁿ⁺¹` for `A = Z/m`, `I = (g)` has order `gcd(gⁿ⁺¹, m)`.
    #[test]
    fn integer_quotient_towers(g in 1i64..13, m in prop::sample::select(vec![0i64, 8, 12, 18, 27, 30, 64])) {
        let alg = if m == 0 { z() } else { zmod(m) };
        let j = SmithIdeal::new(&alg, vec![zi(g)]);
        let t = Tower::build(&j, 4).unwrap();
        prop_assert!(t.transitions_epic());
        for n in 0..=4u32 {
            let gn = BigInt::from(g).pow(n + 1);
            let expect = if m == 0 { gn } else { gn.gcd(&zi(m)) };
            prop_assert_eq!(order(&t.level(n as usize).unwrap().bottom().invariant_factors()), Some(expect));
        }
        for n in 1..=4usize {
            let gp = GradedPiece::compute(&j, n).unwrap();
            prop_assert!(gp.comparison_iso);
            prop_assert!(gp.sequence(&j, &t).unwrap().is_exact());
        }
    }

    /// Over `F₂[x]/(f)` with `I = (g)`: `dim A/Iⁿ⁺¹ = deg gcd(gⁿ⁺¹, f)`.
    #[test]
    fn f2_polynomial_towers(gbits in 2u8..16, fbits in 16u8..64) {
        let r = f2x();
        let poly = |b: u8| r.from_coeffs((0..8).map(|k| u64::from((b >> k) & 1)).collect());
        let (g, f) = (poly(gbits), poly(fbits));
        let alg = Algebra::quotient(r.clone(), f.clone());
        let j = SmithIdeal::new(&alg, vec![g.clone()]);
        let t = Tower::build(&j, 3).unwrap();
        for n in 0..=3u64 {
            let expect = brute_gcd_degree(&r.pow(&g, n + 1), &f);
            prop_assert_eq!(dim(&t.level(n as usize).unwrap().bottom().invariant_factors()), Some(expect));
        }
    }
}

/// Degree of the gcd by repeated long division on coefficient vectors.
fn brute_gcd_degree(
    a: &<PolyRing<PrimeField> as EuclideanDomain>::Elem,
    b: &<PolyRing<PrimeField> as EuclideanDomain>::Elem,
) -> usize {
    let mut u: Vec<u64> = a.coeffs().to_vec();
    let mut v: Vec<u64> = b.coeffs().to_vec();
    let trim = |w: &mut Vec<u64>| {
        while w.last() == Some(&0) {
            w.pop();
        }
    };
    trim(&mut u);
    trim(&mut v);
    while !v.is_empty() {
        while u.len() >= v.len() {
            let shift = u.len() - v.len();
            for (k, c) in v.iter().enumerate() {
                u[shift + k] ^= c;
            }
            trim(&mut u);
            if u.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut u, &mut v);
    }
    u.len().saturating_sub(1)
}
