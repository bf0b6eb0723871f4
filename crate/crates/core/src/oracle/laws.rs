//! Law checks over corpus arrows. The categorical laws are run through the
//! engine on the translated arrows; counts that can be had from element
//! tables alone are checked against the oracle as well.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::bridge::{invariant_orders, EngineModule, EngineRing};
use super::elements::{homs, is_isomorphic, isomorphisms, tensor_order, Profile};
use super::{Corpus, FiniteMap, FiniteModule, FiniteRing, FiniteRingKind, OracleError};
use crate::arrow::laws::{
    check_associator, check_cok_monoidal, check_embedding_adjunction, check_hexagon, check_ker_lax_coherence,
    check_symmetry, check_triangles, check_unit_mono, check_unitors, ker_lax, Structure,
};
use crate::arrow::{pushout_product, Arrow, Embedding};
use crate::fpmod::{hom_module, tensor, Algebra, FpModule};
use crate::ring::{Integers, PolyRing, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Symmetry(Structure),
    Unitors(Structure),
    Associator(Structure),
    Hexagon(Structure),
    CokMonoidal,
    /// `|cok(a □ b)|` from the engine against `|cok a ⊗ cok b|` from elements.
    CokOrder,
    KerLax(Structure),
    KerLaxCoherence(Structure),
    Triangles,
    UnitMono,
    /// Engine bijection plus an element count of arrow homs.
    Adjunction(Embedding),
}

const FAMILIES: [&str; 11] = [
    "symmetry",
    "unitors",
    "associator",
    "hexagon",
    "cok-monoidal",
    "cok-order",
    "ker-lax",
    "ker-lax-coherence",
    "triangles",
    "unit-mono",
    "adjunction",
];

fn structure_name(s: Structure) -> &'static str {
    match s {
        Structure::Tensor => "tensor",
        Structure::PushoutProduct => "pushout-product",
    }
}

impl Law {
    pub fn name(&self) -> String {
        match self {
            Law::Symmetry(s) => format!("symmetry[{}]", structure_name(*s)),
            Law::Unitors(s) => format!("unitors[{}]", structure_name(*s)),
            Law::Associator(s) => format!("associator[{}]", structure_name(*s)),
            Law::Hexagon(s) => format!("hexagon[{}]", structure_name(*s)),
            Law::CokMonoidal => "cok-monoidal".into(),
            Law::CokOrder => "cok-order".into(),
            Law::KerLax(s) => format!("ker-lax[{}]", structure_name(*s)),
            Law::KerLaxCoherence(s) => format!("ker-lax-coherence[{}]", structure_name(*s)),
            Law::Triangles => "triangles".into(),
            Law::UnitMono => "unit-mono".into(),
            Law::Adjunction(e) => format!("adjunction[{e:?}]"),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Law::Unitors(_) | Law::Triangles | Law::UnitMono => 1,
            Law::Associator(_) | Law::Hexagon(_) | Law::KerLaxCoherence(_) => 3,
            _ => 2,
        }
    }

    fn family(family: &str) -> Vec<Law> {
        let both = |f: fn(Structure) -> Law| alloc::vec![f(Structure::Tensor), f(Structure::PushoutProduct)];
        match family {
            "symmetry" => both(Law::Symmetry),
            "unitors" => both(Law::Unitors),
            "associator" => both(Law::Associator),
            "hexagon" => both(Law::Hexagon),
            "cok-monoidal" => alloc::vec![Law::CokMonoidal],
            "cok-order" => alloc::vec![Law::CokOrder],
            "ker-lax" => both(Law::KerLax),
            "ker-lax-coherence" => both(Law::KerLaxCoherence),
            "triangles" => alloc::vec![Law::Triangles],
            "unit-mono" => alloc::vec![Law::UnitMono],
            "adjunction" => [Embedding::L0, Embedding::L1, Embedding::U0, Embedding::U1]
                .into_iter()
                .map(Law::Adjunction)
                .collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawSet {
    pub laws: Vec<Law>,
}

impl LawSet {
    pub fn all() -> Self {
        Self {
            laws: FAMILIES.iter().flat_map(|f| Law::family(f)).collect(),
        }
    }

    /// `all` or a comma-separated list of law families.
    pub fn parse(src: &str) -> Result<Self, String> {
        if src.trim() == "all" {
            return Ok(Self::all());
        }
        let mut laws = Vec::new();
        for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let fam = Law::family(part);
            if fam.is_empty() {
                return Err(format!("unknown law family '{part}' (expected one of {})", FAMILIES.join(", ")));
            }
            laws.extend(fam);
        }
        if laws.is_empty() {
            return Err("empty law set".into());
        }
        Ok(Self { laws })
    }
}

/// `m` as a sum of cyclic modules when the ring is a chain ring.
pub fn describe_module(m: &FiniteModule) -> String {
    let ring = m.ring();
    if m.order() == 1 {
        return "0".into();
    }
    let Some((_, p)) = ring.uniformizer() else {
        return format!("<order {}>", m.order());
    };
    let blocks = Profile::of_module(m).map(|pr| pr.blocks(p)).unwrap_or_default();
    let parts: Vec<String> = blocks
        .iter()
        .rev()
        .map(|&a| match ring.kind() {
            FiniteRingKind::ZMod(_) => format!("Z/{}", p.pow(a as u32)),
            FiniteRingKind::DualF2 if a == 1 => "k".into(),
            FiniteRingKind::DualF2 => "A".into(),
        })
        .collect();
    parts.join("+")
}

pub fn describe_map(f: &FiniteMap) -> String {
    format!("{} -> {} {:?}", describe_module(&f.source), describe_module(&f.target), f.table)
}

/// All maps between corpus modules with `|X₀|·|X₁| ≤ bound`, one per orbit
/// under `Aut(X₀) × Aut(X₁)`.
pub fn corpus_arrows(corpus: &Corpus, bound: usize) -> Vec<FiniteMap> {
    let mods = &corpus.modules;
    let auts: Vec<Vec<FiniteMap>> = mods
        .iter()
        .map(|m| if m.order() <= bound { isomorphisms(m, m) } else { Vec::new() })
        .collect();
    let inverse = |a: &FiniteMap| -> Vec<usize> {
        let mut inv = alloc::vec![0; a.table.len()];
        for (x, &y) in a.table.iter().enumerate() {
            inv[y] = x;
        }
        inv
    };
    let mut out = Vec::new();
    for (i, x0) in mods.iter().enumerate() {
        for (j, x1) in mods.iter().enumerate() {
            if x0.order() * x1.order() > bound {
                continue;
            }
            let inv0: Vec<Vec<usize>> = auts[i].iter().map(inverse).collect();
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for f in homs(x0, x1) {
                if seen.contains(&f.table) {
                    continue;
                }
                for a in &inv0 {
                    for b in &auts[j] {
                        let t: Vec<usize> = a.iter().map(|&x| b.table[f.table[x]]).collect();
                        seen.insert(t);
                    }
                }
                out.push(f);
            }
        }
    }
    out
}

/// One law applied to one tuple; indices refer to arrows, except the first
/// index of an adjunction job, which refers to a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawJob {
    pub law: Law,
    pub tuple: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawTally {
    pub law: String,
    pub arity: usize,
    pub tuples: usize,
    pub passed: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub ring: String,
    pub max_order: usize,
    pub pair_bound: usize,
    pub triple_bound: usize,
    pub modules: usize,
    pub arrows: usize,
    pub tallies: Vec<LawTally>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.passed == t.tuples)
    }

    pub fn counterexamples(&self) -> usize {
        self.tallies.iter().map(|t| t.tuples - t.passed).sum()
    }
}

struct Context<R: EngineRing> {
    modules: Vec<FiniteModule>,
    arrows: Vec<FiniteMap>,
    engine_modules: Vec<FpModule<R>>,
    engine_arrows: Vec<Arrow<R>>,
}

impl<R: EngineRing> Context<R> {
    fn new(alg: &Algebra<R>, modules: Vec<FiniteModule>, arrows: Vec<FiniteMap>) -> Self {
        let engine_modules = modules.iter().map(|m| EngineModule::new(alg, m).module).collect();
        let engine_arrows = arrows.iter().map(|f| EngineModule::arrow(alg, f)).collect();
        Self {
            modules,
            arrows,
            engine_modules,
            engine_arrows,
        }
    }

    fn check(&self, job: &LawJob) -> bool {
        let a = |k: usize| &self.engine_arrows[job.tuple[k]];
        match job.law {
            Law::Symmetry(s) => check_symmetry(s, a(0), a(1)),
            Law::Unitors(s) => check_unitors(s, a(0)),
            Law::Associator(s) => check_associator(s, a(0), a(1), a(2)),
            Law::Hexagon(s) => check_hexagon(s, a(0), a(1), a(2)),
            Law::CokMonoidal => check_cok_monoidal(a(0), a(1)),
            Law::CokOrder => self.cok_order(job.tuple[0], job.tuple[1]),
            Law::KerLax(s) => ker_lax(s, a(0), a(1)).is_ok(),
            Law::KerLaxCoherence(s) => check_ker_lax_coherence(s, a(0), a(1), a(2)),
            Law::Triangles => check_triangles(a(0)),
            Law::UnitMono => check_unit_mono(a(0)),
            Law::Adjunction(e) => {
                check_embedding_adjunction(e, &self.engine_modules[job.tuple[0]], a(1))
                    && adjunction_count(e, &self.modules[job.tuple[0]], &self.arrows[job.tuple[1]])
            }
        }
    }

    fn cok_order(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.engine_arrows[i], &self.engine_arrows[j]);
        let Ok(pp) = pushout_product(a, b) else { return false };
        let c = pp.arrow.cok();
        let alg = a.x0().algebra();
        let (engine, _) = invariant_orders(alg, &c.x1().invariant_factors());
        let expected = tensor_order(&self.arrows[i].cokernel(), &self.arrows[j].cokernel());
        engine == expected
    }

    fn describe(&self, job: &LawJob) -> String {
        let parts: Vec<String> = job
            .tuple
            .iter()
            .enumerate()
            .map(|(k, &i)| match job.law {
                Law::Adjunction(_) if k == 0 => describe_module(&self.modules[i]),
                _ => describe_map(&self.arrows[i]),
            })
            .collect();
        format!("{}: ({})", job.law.name(), parts.join(", "))
    }
}

/// `|Hom_Ar(E, a)|` for `E = L_i(M)`, or `|Hom_Ar(a, E)|` for `E = U_i(M)`,
/// counted from element tables, against the module hom count it should
/// equal.
fn adjunction_count(which: Embedding, m: &FiniteModule, a: &FiniteMap) -> bool {
    let zero = FiniteModule::zero(m.ring());
    let id = FiniteMap {
        source: m.clone(),
        target: m.clone(),
        table: (0..m.order()).collect(),
    };
    let from_zero = FiniteMap {
        source: zero.clone(),
        target: m.clone(),
        table: alloc::vec![0],
    };
    let to_zero = FiniteMap {
        source: m.clone(),
        target: zero,
        table: alloc::vec![0; m.order()],
    };
    let (e, left) = match which {
        Embedding::L0 => (id, true),
        Embedding::L1 => (from_zero, true),
        Embedding::U0 => (to_zero, false),
        Embedding::U1 => (id, false),
    };
    let (count, expected) = if left {
        let expected = match which {
            Embedding::L0 => homs(m, &a.source).len(),
            _ => homs(m, &a.target).len(),
        };
        (count_arrow_homs(&e, a), expected)
    } else {
        let expected = match which {
            Embedding::U0 => homs(&a.source, m).len(),
            _ => homs(&a.target, m).len(),
        };
        (count_arrow_homs(a, &e), expected)
    };
    count == expected
}

/// Commuting squares from `e` to `a`.
fn count_arrow_homs(e: &FiniteMap, a: &FiniteMap) -> usize {
    let mut bottoms: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for f1 in homs(&e.target, &a.target) {
        let key: Vec<usize> = e.table.iter().map(|&x| f1.table[x]).collect();
        *bottoms.entry(key).or_insert(0) += 1;
    }
    homs(&e.source, &a.source)
        .iter()
        .map(|f0| {
            let key: Vec<usize> = f0.table.iter().map(|&x| a.table[x]).collect();
            bottoms.get(&key).copied().unwrap_or(0)
        })
        .sum()
}

fn arrow_order(f: &FiniteMap) -> usize {
    f.source.order() * f.target.order()
}

fn jobs(laws: &LawSet, modules: &[FiniteModule], arrows: &[FiniteMap], pair: usize, triple: usize) -> Vec<LawJob> {
    let small: Vec<usize> = (0..arrows.len()).filter(|&i| arrow_order(&arrows[i]) <= pair).collect();
    let tiny: Vec<usize> = (0..arrows.len()).filter(|&i| arrow_order(&arrows[i]) <= triple).collect();
    let mut out = Vec::new();
    for &law in &laws.laws {
        match (law, law.arity()) {
            (Law::Adjunction(_), _) => {
                for (m, module) in modules.iter().enumerate() {
                    if module.order() > pair {
                        continue;
                    }
                    for &i in &small {
                        out.push(LawJob { law, tuple: alloc::vec![m, i] });
                    }
                }
            }
            (_, 1) => out.extend(small.iter().map(|&i| LawJob { law, tuple: alloc::vec![i] })),
            (_, 2) => {
                for &i in &small {
                    for &j in &small {
                        out.push(LawJob { law, tuple: alloc::vec![i, j] });
                    }
                }
            }
            _ => {
                for &i in &tiny {
                    for &j in &tiny {
                        for &k in &tiny {
                            out.push(LawJob { law, tuple: alloc::vec![i, j, k] });
                        }
                    }
                }
            }
        }
    }
    out
}

/// A runner evaluates `check` on every job and returns results in job
/// order; it may do so in parallel.
pub type Runner<'a> = &'a dyn Fn(&[LawJob], &(dyn Fn(&LawJob) -> bool + Sync)) -> Vec<bool>;

/// Pair laws use arrows with `|X₀|·|X₁| ≤ pair_bound`, triple laws those
/// with `|X₀|·|X₁| ≤ triple_bound`.
pub fn run_laws_with(
    corpus: &Corpus,
    laws: &LawSet,
    pair_bound: usize,
    triple_bound: usize,
    runner: Runner<'_>,
) -> Result<LawReport, OracleError> {
    match corpus.ring.kind() {
        FiniteRingKind::ZMod(_) => run_typed::<Integers>(corpus, laws, pair_bound, triple_bound, runner),
        FiniteRingKind::DualF2 => run_typed::<PolyRing<PrimeField>>(corpus, laws, pair_bound, triple_bound, runner),
    }
}

pub fn run_laws(corpus: &Corpus, laws: &LawSet, pair_bound: usize, triple_bound: usize) -> Result<LawReport, OracleError> {
    run_laws_with(corpus, laws, pair_bound, triple_bound, &|jobs, check| jobs.iter().map(check).collect())
}

fn run_typed<R: EngineRing + Sync>(
    corpus: &Corpus,
    laws: &LawSet,
    pair_bound: usize,
    triple_bound: usize,
    runner: Runner<'_>,
) -> Result<LawReport, OracleError>
where
    R::Elem: Sync + Send,
{
    let alg = R::realize(&corpus.ring).ok_or_else(|| OracleError::UnknownRing(corpus.ring.name()))?;
    let modules: Vec<FiniteModule> = corpus.modules.iter().filter(|m| m.order() <= pair_bound).cloned().collect();
    let arrows = corpus_arrows(corpus, pair_bound);
    let list = jobs(laws, &modules, &arrows, pair_bound, triple_bound);
    let ctx = Context::new(&alg, modules, arrows);
    let results = runner(&list, &|job: &LawJob| ctx.check(job));
    let mut tallies: Vec<LawTally> = laws
        .laws
        .iter()
        .map(|l| LawTally {
            law: l.name(),
            arity: l.arity(),
            tuples: 0,
            passed: 0,
            counterexamples: Vec::new(),
        })
        .collect();
    for (job, ok) in list.iter().zip(results) {
        let k = laws.laws.iter().position(|l| *l == job.law).unwrap();
        let t = &mut tallies[k];
        t.tuples += 1;
        if ok {
            t.passed += 1;
        } else {
            t.counterexamples.push(ctx.describe(job));
        }
    }
    Ok(LawReport {
        ring: corpus.ring.name(),
        max_order: corpus.max_order,
        pair_bound,
        triple_bound,
        modules: ctx.modules.len(),
        arrows: ctx.arrows.len(),
        tallies,
    })
}

/// Engine against oracle on every ordered pair of corpus modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub ring: String,
    pub pairs: usize,
    pub tensor_mismatches: Vec<String>,
    pub hom_mismatches: Vec<String>,
    pub iso_mismatches: Vec<String>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.tensor_mismatches.is_empty() && self.hom_mismatches.is_empty() && self.iso_mismatches.is_empty()
    }
}

pub fn check_engine_agreement(corpus: &Corpus) -> Result<AgreementReport, OracleError> {
    match corpus.ring.kind() {
        FiniteRingKind::ZMod(_) => agreement::<Integers>(corpus),
        FiniteRingKind::DualF2 => agreement::<PolyRing<PrimeField>>(corpus),
    }
}

fn summand_orders(ring: &FiniteRing, profile: Option<Profile>) -> Option<Vec<usize>> {
    let (_, p) = ring.uniformizer()?;
    let mut v: Vec<usize> = profile?.blocks(p).into_iter().map(|a| p.pow(a as u32)).collect();
    v.sort_unstable();
    Some(v)
}

fn agreement<R: EngineRing>(corpus: &Corpus) -> Result<AgreementReport, OracleError> {
    let alg = R::realize(&corpus.ring).ok_or_else(|| OracleError::UnknownRing(corpus.ring.name()))?;
    let ms = &corpus.modules;
    let engine: Vec<FpModule<R>> = ms.iter().map(|m| EngineModule::new(&alg, m).module).collect();
    let mut report = AgreementReport {
        ring: corpus.ring.name(),
        pairs: 0,
        tensor_mismatches: Vec::new(),
        hom_mismatches: Vec::new(),
        iso_mismatches: Vec::new(),
    };
    let ring = &corpus.ring;
    for (i, m) in ms.iter().enumerate() {
        for (j, n) in ms.iter().enumerate() {
            report.pairs += 1;
            let label = || format!("({}, {})", describe_module(m), describe_module(n));
            let t = tensor(&engine[i], &engine[j]).map_err(|_| OracleError::UnknownRing(ring.name()))?;
            let (order, orders) = invariant_orders(&alg, &t.invariant_factors());
            let want = summand_orders(ring, Profile::of_tensor(m, n));
            if order != tensor_order(m, n) || want.is_some_and(|w| w != orders) {
                report.tensor_mismatches.push(label());
            }
            let h = hom_module(&engine[i], &engine[j]).map_err(|_| OracleError::UnknownRing(ring.name()))?;
            let (order, orders) = invariant_orders(&alg, &h.module.invariant_factors());
            let want = summand_orders(ring, Profile::of_hom(m, n));
            if order != homs(m, n).len() || want.is_some_and(|w| w != orders) {
                report.hom_mismatches.push(label());
            }
            let same = engine[i].invariant_factors() == engine[j].invariant_factors();
            if same != is_isomorphic(m, n) {
                report.iso_mismatches.push(label());
            }
        }
    }
    Ok(report)
}

impl core::fmt::Display for LawTally {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}: {}/{}", self.law, self.passed, self.tuples)
    }
}

impl ToString for LawSet {
    fn to_string(&self) -> String {
        self.laws.iter().map(Law::name).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::super::enumerate_modules;
    use super::*;

    #[test]
    fn arrows_up_to_iso() {
        let c = enumerate_modules(&FiniteRing::zmod(2), 4).unwrap();
        // 0→0, 0→k, k→0, k→k (zero and iso), 0→k², k²→0
        assert_eq!(corpus_arrows(&c, 4).len(), 7);
    }

    #[test]
    fn smoke_laws() {
        let c = enumerate_modules(&FiniteRing::zmod(4), 4).unwrap();
        let report = run_laws(&c, &LawSet::all(), 4, 2).unwrap();
        assert!(report.passed(), "{:?}", report.tallies);
        assert!(report.tallies.iter().all(|t| t.tuples > 0));
        let empty = Corpus::empty(&FiniteRing::zmod(4));
        assert!(run_laws(&empty, &LawSet::all(), 16, 8).unwrap().passed());
    }

    #[test]
    fn agreement_small() {
        for r in [FiniteRing::zmod(4), FiniteRing::dual_f2(), FiniteRing::zmod(6)] {
            let c = enumerate_modules(&r, 8).unwrap();
            let rep = check_engine_agreement(&c).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn cok_monoidal_smoke() {
        let r = FiniteRing::zmod(4);
        let z4 = FiniteModule::free(&r, 1);
        let twice = FiniteMap {
            source: z4.clone(),
            target: z4.clone(),
            table: (0..4).map(|x| z4.act(2, x)).collect(),
        };
        let alg = Integers::realize(&r).unwrap();
        let a = EngineModule::arrow(&alg, &twice);
        assert!(check_cok_monoidal(&a, &a));
        let c = pushout_product(&a, &a).unwrap().arrow.cok();
        let z2 = twice.cokernel();
        assert_eq!(invariant_orders(&alg, &c.x1().invariant_factors()).0, tensor_order(&z2, &z2));
        assert_eq!(tensor_order(&z2, &z2), 2);
    }
}
