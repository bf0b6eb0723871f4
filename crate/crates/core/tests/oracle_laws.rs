use adic_smith_core::oracle::{
    check_engine_agreement, colimit_hom_check, enumerate_modules, predicted_class_count, run_laws, tensor_order,
    FiniteMap, FiniteModule, FiniteRing, LawSet,
};

// The full order-16/8 runs live in the acceptance suite.
#[test]
fn laws_small_bound() {
    for ring in [FiniteRing::zmod(4), FiniteRing::dual_f2(), FiniteRing::zmod(3)] {
        let corpus = enumerate_modules(&ring, 8).unwrap();
        let report = run_laws(&corpus, &LawSet::all(), 8, 4).unwrap();
        for t in &report.tallies {
            assert!(t.tuples > 0, "{} checked no tuples", t.law);
        }
        assert!(report.passed(), "{}", ring.name());
        assert_eq!(report.counterexamples(), 0);
    }
}

#[test]
fn enumeration_matches_partitions() {
    for (ring, bound) in [(FiniteRing::zmod(2), 64), (FiniteRing::zmod(3), 64), (FiniteRing::zmod(4), 16), (FiniteRing::dual_f2(), 16)] {
        let corpus = enumerate_modules(&ring, bound).unwrap();
        assert_eq!(Some(corpus.counts()), predicted_class_count(&ring, bound), "{}", ring.name());
    }
    let z4 = enumerate_modules(&FiniteRing::zmod(4), 16).unwrap();
    // 1, Z/2, {Z/4, Z/2²}, {Z/4+Z/2, Z/2³}, {Z/4², Z/4+Z/2², Z/2⁴}
    assert_eq!(z4.counts().values().copied().collect::<Vec<_>>(), [1, 1, 2, 2, 3]);
    for r in [FiniteRing::zmod(3), FiniteRing::dual_f2()] {
        let c = enumerate_modules(&r, 1).unwrap();
        assert_eq!(c.modules.len(), 1);
        assert_eq!(c.modules[0].order(), 1);
    }
}

#[test]
fn engine_agrees_with_elements() {
    for ring in [FiniteRing::zmod(2), FiniteRing::zmod(3), FiniteRing::zmod(4), FiniteRing::dual_f2()] {
        let corpus = enumerate_modules(&ring, 16).unwrap();
        let rep = check_engine_agreement(&corpus).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.pairs, corpus.modules.len().pow(2));
    }
}

#[test]
fn tensor_examples() {
    let z12 = FiniteRing::zmod(12);
    let (z6, z4) = (FiniteModule::cyclic_quotient(&z12, 6), FiniteModule::cyclic_quotient(&z12, 4));
    assert_eq!(tensor_order(&z6, &z4), 2);
    let r = FiniteRing::zmod(4);
    let z2 = FiniteModule::cyclic_quotient(&r, 2);
    assert_eq!(tensor_order(&z2.direct_sum(&z2), &z2), 4);
}

fn times(source: &FiniteModule, target: &FiniteModule, c: usize) -> FiniteMap {
    FiniteMap {
        source: source.clone(),
        target: target.clone(),
        table: (0..source.order()).map(|x| target.act(c, x)).collect(),
    }
}

#[test]
fn colimits_of_monos() {
    let r = FiniteRing::zmod(8);
    let (z2, z4, z8) = (
        FiniteModule::cyclic_quotient(&r, 2),
        FiniteModule::cyclic_quotient(&r, 4),
        FiniteModule::cyclic_quotient(&r, 0),
    );
    let chain = [times(&z2, &z4, 2), times(&z4, &z8, 2)];
    let rep = colimit_hom_check(&z2, &chain);
    assert_eq!(rep.hom_counts, [2, 2, 2]);
    assert!(rep.bijective && rep.transitions_mono);
    let rep = colimit_hom_check(&z8, &chain);
    assert_eq!(rep.hom_counts, [2, 4, 8]);
    assert!(rep.bijective);
    let constant = [times(&z4, &z4, 1), times(&z4, &z4, 1)];
    assert!(colimit_hom_check(&z2, &constant).bijective);
}
