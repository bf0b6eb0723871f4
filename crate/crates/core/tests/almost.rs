use adic_smith_core::almost::{AlmostContext, AlmostMap, AlmostModule};
use adic_smith_core::fpmod::{FpModule, ModuleMap};
use adic_smith_core::linalg::Matrix;
use adic_smith_core::ring::{PrimeField, Rationals};
use adic_smith_core::tower::SmithIdeal;
use proptest::prelude::*;

const N: usize = 4;
const K: usize = 6;

fn ctx() -> AlmostContext<Rationals> {
    AlmostContext::new(Rationals, K)
}

fn cyclic(c: &AlmostContext<Rationals>, depth: usize, k: usize) -> AlmostModule<Rationals> {
    let r = c.ring(depth);
    AlmostModule {
        depth,
        module: FpModule::cyclic(&c.algebra(depth), r.var_pow(k)),
    }
}

#[test]
fn finitely_generated_ideals_pass_the_grid() {
    let c = ctx();
    let r0 = c.ring(0);
    let r1 = c.ring(1);
    let cases: Vec<(usize, Vec<_>, AlmostModule<Rationals>)> = vec![
        (0, vec![r0.var_pow(1)], AlmostModule { depth: 0, module: FpModule::free(&c.algebra(0), 1) }),
        (0, vec![r0.var_pow(2)], AlmostModule { depth: 0, module: FpModule::free(&c.algebra(0), 2) }),
        (0, vec![r0.var_pow(3), r0.var_pow(2)], AlmostModule { depth: 0, module: FpModule::free(&c.algebra(0), 1) }),
        (1, vec![r1.var_pow(1)], AlmostModule { depth: 1, module: FpModule::free(&c.algebra(1), 1) }),
        (1, vec![r1.var_pow(3), r1.var_pow(5)], AlmostModule { depth: 1, module: FpModule::free(&c.algebra(1), 3) }),
    ];
    for (d, gens, m) in cases {
        let j = SmithIdeal::new(&c.algebra(d), gens);
        let rep = c.almost_adic_check(&j, &m, N, K).unwrap();
        assert_eq!(rep.levels.len(), N + 1);
        assert!(rep.exact() && rep.almost() && rep.monotone());
        for l in &rep.levels {
            assert_eq!(l.almost.depths.len(), K + 1);
        }
    }
}

#[test]
fn torsion_witness_separates_exact_from_almost() {
    let c = ctx();
    let j = SmithIdeal::new(&c.algebra(0), vec![c.uniformizer(0)]);
    let m = AlmostModule {
        depth: 0,
        module: FpModule::free(&c.algebra(0), 1),
    };
    for d in 0..=K {
        let noisy = c.with_noise(&m, d).unwrap();
        let jd = c.base_change_ideal(&j, 0, d);
        let rep = c.almost_adic_check(&jd, &noisy, N, K).unwrap();
        assert!(!rep.exact(), "noise at depth {d} must break exact completeness");
        assert!(rep.monotone());
        // level 0 never sees the ideal; above it the verdict holds exactly
        // at the depths where u_e kills V_d/(u_d)
        assert!(rep.levels[0].exact);
        for l in &rep.levels[1..] {
            assert!(!l.exact);
            let expect: Vec<bool> = (0..=K).map(|e| e <= d).collect();
            assert_eq!(l.almost.depths, expect, "noise depth {d}, level {}", l.level);
        }
        if d == K {
            assert!(rep.almost());
        }
    }
}

/// For `M = V/(t³)` the truncations stay consistent, but the □-comparison
/// picks up the kernel of `(I/Iⁿ⁺¹) ⊗ M → IM/Iⁿ⁺¹M` once `Iⁿ⁺¹M = 0`.
#[test]
fn torsion_module_comparison_defect() {
    let c = ctx();
    let j = SmithIdeal::new(&c.algebra(0), vec![c.uniformizer(0)]);
    let m = cyclic(&c, 0, 3);
    let rep = c.almost_adic_check(&j, &m, N, K).unwrap();
    let exact: Vec<bool> = rep.levels.iter().map(|l| l.exact).collect();
    assert_eq!(exact, vec![true, true, true, false, false]);
    for l in &rep.levels[3..] {
        assert_eq!(l.almost.deepest(), Some(0));
    }
    let t = adic_smith_core::tower::Tower::build(&j, N).unwrap();
    let adic = adic_smith_core::tower::AdicModuleTower::build(&t, &m.module).unwrap();
    assert!(adic.consistent(&t).unwrap());
}

#[test]
fn v_mod_t_is_not_almost_zero() {
    let c = ctx();
    let v = c.almost_zero_to_depth(&c.torsion_witness(0), K);
    assert!(v.at(0));
    assert!(!v.at(1));
    assert!(v.downward_closed());
}

#[test]
fn multiplication_by_t_is_not_an_almost_iso() {
    let c = ctx();
    let v = FpModule::free(&c.algebra(0), 1);
    let t = AlmostMap {
        depth: 0,
        map: ModuleMap::scalar(&v, &c.uniformizer(0)),
    };
    let verdict = c.almost_iso_to_depth(&t, K).iso();
    assert_eq!(verdict.deepest(), Some(0));
}

#[test]
fn prime_field_context() {
    let c = AlmostContext::new(PrimeField::new(2).unwrap(), 4);
    let j = SmithIdeal::new(&c.algebra(0), vec![c.uniformizer(0)]);
    let m = AlmostModule {
        depth: 0,
        module: FpModule::free(&c.algebra(0), 1),
    };
    let rep = c.almost_adic_check(&j, &m, 3, 4).unwrap();
    assert!(rep.exact() && rep.almost());
}

/// `V_D/(u_D^k)` is killed by `u_e` exactly when `2^(D-e) ≥ k`.
fn killed_depths(d: usize, k: usize) -> Vec<bool> {
    (0..=K).map(|e| e <= d && (1usize << (d - e)) >= k).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cyclic_torsion_depths(d in 0usize..=4, k in 1usize..=20) {
        let c = ctx();
        let m = cyclic(&c, d, k);
        let v = c.almost_zero_to_depth(&m, K);
        prop_assert_eq!(&v.depths, &killed_depths(d, k));
        prop_assert!(v.downward_closed());
    }

    /// Almost-zero modules form a Serre class, with extensions costing one depth.
    #[test]
    fn serre_class(d in 0usize..=4, a in 1usize..=8, b in 1usize..=8) {
        let c = ctx();
        let r = c.ring(d);
        let alg = c.algebra(d);
        // 0 → u^b·E → E → E/u^b E → 0 with E = V_d/(u^(a+b))
        let e = AlmostModule { depth: d, module: FpModule::cyclic(&alg, r.var_pow(a + b)) };
        let sub = AlmostModule { depth: d, module: FpModule::cyclic(&alg, r.var_pow(a)) };
        let quo = AlmostModule { depth: d, module: FpModule::cyclic(&alg, r.var_pow(b)) };
        let inc = ModuleMap::new(&sub.module, &e.module, Matrix::from_rows(&r, vec![vec![r.var_pow(b)]], 1)).unwrap();
        prop_assert!(inc.is_injective());
        let proj = ModuleMap::new(&e.module, &quo.module, Matrix::identity(&r, 1)).unwrap();
        prop_assert!(proj.is_surjective());
        prop_assert!(proj.compose(&inc).is_zero());
        let ve = c.almost_zero_to_depth(&e, K);
        let vs = c.almost_zero_to_depth(&sub, K);
        let vq = c.almost_zero_to_depth(&quo, K);
        for x in 0..=K {
            if ve.at(x) {
                prop_assert!(vs.at(x) && vq.at(x));
            }
            if x >= 1 && vs.at(x) && vq.at(x) {
                prop_assert!(ve.at(x - 1));
            }
        }
    }
}

