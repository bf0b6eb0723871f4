//! Command dispatch.

use std::fmt;

use adic_smith_core::almost::{AlmostContext, AlmostModule};
use adic_smith_core::fpmod::{Algebra, FpModule, InvariantFactors};
use adic_smith_core::linalg::Matrix;
use adic_smith_core::monomial::{parse_monomials, MonomialLocalRing};
use adic_smith_core::oracle::{
    check_engine_agreement, enumerate_modules, run_laws_with, FiniteRing, LawJob, LawSet, MAX_ORDER,
};
use adic_smith_core::ring::spec::CoeffField;
use adic_smith_core::ring::{EuclideanDomain, Field, PolyRing, PrimeField, Rationals};
use adic_smith_core::tower::{
    check_complete, check_composition, yekutieli_compare, AdicModuleTower, CompletenessVerdict, GradedPiece,
    SmithIdeal, SmithMorphism, Tower,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::doc::{parse_field, AlmostDecl, Document, InputError};
use crate::report::{Certificate, Report, Row};
use crate::typed::{elem, resolve, visit_ring, AlgebraVisitor, CliRing, Typed};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Tower,
    Graded,
    CompleteCheck,
    AnalyticCheck,
    AdicModule,
    Yekutieli,
    Almost,
    VerifyLaws,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Tower => "tower",
            Command::Graded => "graded",
            Command::CompleteCheck => "complete-check",
            Command::AnalyticCheck => "analytic-check",
            Command::AdicModule => "adic-module",
            Command::Yekutieli => "yekutieli",
            Command::Almost => "almost",
            Command::VerifyLaws => "verify-laws",
        }
    }

    pub fn needs_input(self) -> bool {
        !matches!(self, Command::VerifyLaws)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[default]
    Pid,
    Monomial,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub levels: Option<usize>,
    pub depth: Option<usize>,
    pub with_certificates: bool,
    pub engine: Engine,
    /// Monomial engine: number of variables.
    pub vars: Option<usize>,
    /// Names a document ideal, or lists monomials for the monomial engine.
    pub ideal: Option<String>,
    pub module: Option<String>,
    pub morphism: Option<String>,
    /// Coefficient field of the monomial engine.
    pub field: Option<String>,
    /// Finite ring of `verify-laws`.
    pub ring: Option<String>,
    pub max_order: Option<usize>,
    pub laws: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Input(InputError),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "input error: {e}"),
            CliError::Usage(s) => write!(f, "usage error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

const DEFAULT_LEVELS: usize = 3;

pub fn run(command: Command, doc: Option<&Document>, opts: &Options) -> Result<Report, CliError> {
    if opts.engine == Engine::Monomial && !matches!(command, Command::Tower | Command::Graded) {
        return Err(CliError::Usage(format!(
            "--engine monomial only applies to tower and graded, not {}",
            command.name()
        )));
    }
    if command == Command::VerifyLaws {
        return verify_laws(opts);
    }
    if opts.engine == Engine::Monomial {
        return monomial(command, opts);
    }
    let doc = doc.ok_or_else(|| CliError::Usage(format!("{} needs --input", command.name())))?;
    if command == Command::Almost {
        return almost(doc, opts);
    }
    let ring = target_ring(command, doc, opts)?;
    let spec = doc.ring(&ring, "params")?;
    visit_ring(&spec, Dispatch { command, doc, opts, ring: &ring })
}

fn pick<'a>(flag: &'a Option<String>, param: &'a Option<String>) -> Option<&'a String> {
    flag.as_ref().or(param.as_ref())
}

/// The ring all named objects of the command live over.
fn target_ring(command: Command, doc: &Document, opts: &Options) -> Result<String, CliError> {
    let p = &doc.params;
    let wants_morphism = command == Command::AnalyticCheck
        || (command == Command::CompleteCheck && pick(&opts.morphism, &p.morphism).is_some());
    if wants_morphism {
        let name = pick(&opts.morphism, &p.morphism)
            .ok_or_else(|| CliError::Usage(format!("{} needs a morphism (--morphism or params.morphism)", command.name())))?;
        let m = doc
            .morphisms
            .get(name)
            .ok_or_else(|| InputError::new("params.morphism", format!("unknown morphism '{name}'")))?;
        return Ok(doc.ideals[&m.source].ring.clone());
    }
    let name = pick(&opts.ideal, &p.ideal)
        .ok_or_else(|| CliError::Usage(format!("{} needs an ideal (--ideal or params.ideal)", command.name())))?;
    let ideal = doc
        .ideals
        .get(name)
        .ok_or_else(|| InputError::new("params.ideal", format!("unknown ideal '{name}'")))?;
    Ok(ideal.ring.clone())
}

struct Dispatch<'a> {
    command: Command,
    doc: &'a Document,
    opts: &'a Options,
    ring: &'a str,
}

impl AlgebraVisitor for Dispatch<'_> {
    type Out = Result<Report, CliError>;

    fn visit<R: CliRing>(self, alg: Algebra<R>) -> Self::Out
    where
        R::Elem: Send + Sync,
    {
        let t = resolve(self.doc, self.ring, &alg)?;
        let ctx = Ctx {
            t: &t,
            doc: self.doc,
            opts: self.opts,
            levels: self.opts.levels.or(self.doc.params.levels).unwrap_or(DEFAULT_LEVELS),
        };
        let mut report = Report::new(self.command.name());
        report.param("levels", ctx.levels);
        report.param("ring", self.ring);
        match self.command {
            Command::Tower => ctx.tower(&mut report)?,
            Command::Graded => ctx.graded(&mut report)?,
            Command::CompleteCheck => ctx.complete(&mut report)?,
            Command::AnalyticCheck => ctx.analytic(&mut report)?,
            Command::AdicModule => ctx.adic_module(&mut report)?,
            Command::Yekutieli => ctx.yekutieli(&mut report)?,
            Command::Almost | Command::VerifyLaws => unreachable!("dispatched earlier"),
        }
        Ok(report)
    }
}

struct Ctx<'a, R: EuclideanDomain> {
    t: &'a Typed<R>,
    doc: &'a Document,
    opts: &'a Options,
    levels: usize,
}

fn show<R: EuclideanDomain>(r: &R, e: &R::Elem) -> String {
    format!("{}", r.display(e))
}

fn inv_json<R: EuclideanDomain>(r: &R, inv: &InvariantFactors<R>) -> Value {
    json!({
        "free": inv.free_rank,
        "torsion": inv.torsion.iter().map(|d| show(r, d)).collect::<Vec<_>>(),
    })
}

fn inv_text<R: EuclideanDomain>(r: &R, inv: &InvariantFactors<R>) -> String {
    inv.display(r).to_string()
}

fn matrix_rows<R: EuclideanDomain>(m: &Matrix<R>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| show(m.ring(), m.get(i, j))).collect())
        .collect()
}

fn tower_error(e: impl fmt::Display) -> CliError {
    CliError::Input(InputError::new("params", e))
}

impl<R: CliRing> Ctx<'_, R>
where
    R::Elem: Send + Sync,
{
    fn ring(&self) -> &R {
        self.t.alg.ring()
    }

    fn ideal(&self, report: &mut Report) -> Result<&SmithIdeal<R>, CliError> {
        let name = pick(&self.opts.ideal, &self.doc.params.ideal)
            .ok_or_else(|| CliError::Usage("an ideal is required".into()))?;
        report.param("ideal", name);
        self.t
            .ideals
            .get(name)
            .ok_or_else(|| InputError::new("params.ideal", format!("unknown ideal '{name}'")).into())
    }

    fn certify(&self, report: &mut Report, level: Option<usize>, name: &str, m: &Matrix<R>) {
        if self.opts.with_certificates {
            report.certify(Certificate {
                level,
                name: name.into(),
                matrix: matrix_rows(m),
            });
        }
    }

    fn tower(&self, report: &mut Report) -> Result<(), CliError> {
        let j = self.ideal(report)?;
        let tower = Tower::build(j, self.levels).map_err(tower_error)?;
        let r = self.ring();
        for (n, level) in tower.levels.iter().enumerate() {
            let epic = n == 0 || tower.transitions[n - 1].is_epi();
            let row = Row::at(n)
                .with("bottom", inv_json(r, &level.bottom().invariant_factors()))
                .with("ideal_part", inv_json(r, &level.ideal_part().invariant_factors()))
                .with("transition_epic", epic)
                .with("localization_commutes", level.localization.commutes())
                .passed(epic && level.localization.commutes());
            report.push(row, || format!("level {n}: transition to level {} is not epic", n.saturating_sub(1)));
            if n > 0 {
                let t = &tower.transitions[n - 1];
                self.certify(report, Some(n), "transition.top", t.top().matrix());
                self.certify(report, Some(n), "transition.bottom", t.bottom().matrix());
            }
            self.certify(report, Some(n), "arrow", level.arrow.map().matrix());
        }
        Ok(())
    }

    fn graded(&self, report: &mut Report) -> Result<(), CliError> {
        let j = self.ideal(report)?;
        let tower = Tower::build(j, self.levels).map_err(tower_error)?;
        let r = self.ring();
        let pieces: Vec<_> = (1..=self.levels)
            .into_par_iter()
            .map(|n| {
                let g = GradedPiece::compute(j, n)?;
                let s = g.sequence(j, &tower)?;
                Ok((g, s))
            })
            .collect::<Result<Vec<_>, adic_smith_core::tower::TowerError>>()
            .map_err(tower_error)?;
        for (g, s) in pieces {
            let n = g.n;
            let row = Row::at(n)
                .with("graded", inv_json(r, &g.module.invariant_factors()))
                .with("comparison_iso", g.comparison_iso)
                .with("sequence_exact", s.is_exact())
                .with("literal_top_exact", s.literal_top_exact)
                .passed(g.comparison_iso && s.is_exact());
            report.push(row, || {
                format!(
                    "level {n}: comparison iso {}, sequence exact {}",
                    g.comparison_iso,
                    s.is_exact()
                )
            });
            self.certify(report, Some(n), "comparison", g.comparison.matrix());
        }
        Ok(())
    }

    fn verdict_rows(&self, report: &mut Report, v: &CompletenessVerdict<R>) {
        let r = self.ring();
        for l in &v.levels {
            let row = Row::at(l.level)
                .with("top_iso", l.top.iso)
                .with("bottom_iso", l.bottom.iso)
                .with("top_source", inv_json(r, &l.top.source))
                .with("top_target", inv_json(r, &l.top.target))
                .with("bottom_source", inv_json(r, &l.bottom.source))
                .with("bottom_target", inv_json(r, &l.bottom.target))
                .passed(l.passed());
            report.push(row, || {
                let mut parts = Vec::new();
                if !l.top.iso {
                    parts.push(format!(
                        "top {} vs {}",
                        inv_text(r, &l.top.source),
                        inv_text(r, &l.top.target)
                    ));
                }
                if !l.bottom.iso {
                    parts.push(format!(
                        "bottom {} vs {}",
                        inv_text(r, &l.bottom.source),
                        inv_text(r, &l.bottom.target)
                    ));
                }
                format!("level {}: {}", l.level, parts.join("; "))
            });
        }
    }

    fn morphism(&self, report: &mut Report) -> Result<&SmithMorphism<R>, CliError> {
        let name = pick(&self.opts.morphism, &self.doc.params.morphism)
            .ok_or_else(|| CliError::Usage("a morphism is required".into()))?;
        report.param("morphism", name);
        self.t
            .morphisms
            .get(name)
            .ok_or_else(|| InputError::new("params.morphism", format!("unknown morphism '{name}'")).into())
    }

    fn analytic(&self, report: &mut Report) -> Result<(), CliError> {
        let phi = self.morphism(report)?;
        let v = phi.check_analytic_equivalence(self.levels).map_err(tower_error)?;
        self.verdict_rows(report, &v);
        if self.opts.with_certificates {
            for n in 0..=self.levels {
                let sq = phi.level_map(n).map_err(tower_error)?;
                self.certify(report, Some(n), "level_map.top", sq.top().matrix());
                self.certify(report, Some(n), "level_map.bottom", sq.bottom().matrix());
            }
        }
        Ok(())
    }

    fn complete(&self, report: &mut Report) -> Result<(), CliError> {
        if pick(&self.opts.morphism, &self.doc.params.morphism).is_some() {
            return self.analytic(report);
        }
        let j = self.ideal(report)?;
        let v = check_complete(j, self.levels).map_err(tower_error)?;
        self.verdict_rows(report, &v);
        let n = self.levels;
        let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|a| (0..=n).map(move |b| (a, b))).collect();
        let results: Vec<bool> = pairs
            .par_iter()
            .map(|&(a, b)| check_composition(j, a, b).unwrap_or(false))
            .collect();
        let bad: Vec<String> = pairs
            .iter()
            .zip(&results)
            .filter(|(_, ok)| !**ok)
            .map(|((a, b), _)| format!("P^{a}(P^{b}(j))"))
            .collect();
        let row = Row::plain()
            .with("composition_pairs", pairs.len())
            .with("composition_failures", bad.clone())
            .passed(bad.is_empty());
        report.push(row, || format!("composition fails at {}", bad.join(", ")));
        Ok(())
    }

    fn adic_module(&self, report: &mut Report) -> Result<(), CliError> {
        let j = self.ideal(report)?;
        let name = pick(&self.opts.module, &self.doc.params.module)
            .ok_or_else(|| CliError::Usage("adic-module needs a module (--module or params.module)".into()))?;
        report.param("module", name);
        let m = self
            .t
            .modules
            .get(name)
            .ok_or_else(|| InputError::new("params.module", format!("module '{name}' is not over the ideal's ring")))?;
        let tower = Tower::build(j, self.levels).map_err(tower_error)?;
        let adic = AdicModuleTower::build(&tower, m).map_err(tower_error)?;
        let r = self.ring();
        for n in 0..=self.levels {
            let squares = adic.consistency_squares(&tower, n).map_err(tower_error)?;
            let consistent = squares.iter().all(|s| s.is_iso());
            let epic = n == 0 || adic.transitions[n - 1].is_epi();
            let comparison = adic.comparison(n).map_err(tower_error)?;
            let level = &adic.levels[n];
            let row = Row::at(n)
                .with("top", inv_json(r, &level.x0().invariant_factors()))
                .with("bottom", inv_json(r, &level.x1().invariant_factors()))
                .with("consistent", consistent)
                .with("transition_epic", epic)
                .with("image_comparison_iso", comparison.is_iso())
                .passed(consistent && epic);
            report.push(row, || format!("level {n}: consistent {consistent}, transition epic {epic}"));
            self.certify(report, Some(n), "level", level.map().matrix());
        }
        Ok(())
    }

    fn yekutieli(&self, report: &mut Report) -> Result<(), CliError> {
        let j = self.ideal(report)?;
        let bound = self.levels;
        let ns: Vec<usize> = match self.doc.params.n {
            Some(n) => vec![n],
            None => (1..=bound).collect(),
        };
        if ns.iter().any(|&n| n == 0 || n > bound) {
            return Err(CliError::Usage(format!("n must satisfy 1 <= n <= {bound}")));
        }
        let r = self.ring();
        for n in ns {
            let v = yekutieli_compare(j, n, bound).map_err(tower_error)?;
            let row = Row::at(n)
                .with("image_of_power", inv_json(r, &v.image_of_power))
                .with("power_of_image", inv_json(r, &v.power_of_image))
                .with("truncated_limit", inv_json(r, &v.truncated_limit))
                .with("limit_to_image_iso", v.limit_to_image)
                .with("image_to_power_iso", v.image_to_power)
                .passed(v.passed());
            report.push(row, || format!("n = {n}: comparison maps are not isomorphisms"));
        }
        Ok(())
    }
}

fn monomial(command: Command, opts: &Options) -> Result<Report, CliError> {
    let vars = opts.vars.unwrap_or(2);
    let text = opts
        .ideal
        .as_deref()
        .ok_or_else(|| CliError::Usage("--engine monomial needs --ideal with monomial generators".into()))?;
    let gens = parse_monomials(vars, text).map_err(|e| InputError::new("--ideal", e))?;
    let field = parse_field(opts.field.as_deref().unwrap_or("Q")).map_err(|e| InputError::new("--field", e))?;
    let bound = opts.levels.unwrap_or(DEFAULT_LEVELS);
    let mut report = Report::new(command.name());
    report.param("engine", "monomial");
    report.param("vars", vars);
    report.param("ideal", text);
    report.param("levels", bound);
    match field {
        CoeffField::Rationals => monomial_rows(Rationals, vars, gens, bound, &mut report)?,
        CoeffField::Prime(p) => {
            let f = PrimeField::new(p).map_err(|e| InputError::new("--field", e))?;
            monomial_rows(f, vars, gens, bound, &mut report)?
        }
    }
    Ok(report)
}

fn monomial_rows<F: Field>(
    field: F,
    vars: usize,
    gens: Vec<Vec<u32>>,
    bound: usize,
    report: &mut Report,
) -> Result<(), CliError>
where
    PolyRing<F>: EuclideanDomain,
{
    let ring = MonomialLocalRing::new(field, vars, gens).map_err(|e| InputError::new("--ideal", e))?;
    let tower = ring.monomial_tower(bound).map_err(|e| InputError::new("--ideal", e))?;
    for l in &tower.levels {
        let row = Row::at(l.n)
            .with("algebra_dim", l.algebra_dim)
            .with("ideal_dim", l.ideal_dim)
            .with("graded_dim", l.graded_dim);
        report.push(row, String::new);
    }
    let ok = tower.transitions_surjective && tower.consistent && tower.additive;
    let mut row = Row::plain()
        .with("transitions_surjective", tower.transitions_surjective)
        .with("consistent", tower.consistent)
        .with("additive", tower.additive);
    let mut agrees = true;
    if let Some(a) = ring.agrees_with_pid_engine(bound).map_err(tower_error)? {
        row = row.with("agrees_with_pid_engine", a);
        agrees = a;
    }
    report.push(row.passed(ok && agrees), || "monomial tower checks failed".into());
    Ok(())
}

fn almost(doc: &Document, opts: &Options) -> Result<Report, CliError> {
    let decl = doc
        .almost
        .as_ref()
        .ok_or_else(|| InputError::new("almost", "the almost command needs an \"almost\" section"))?;
    let depth = opts.depth.or(doc.params.depth).unwrap_or(3);
    let bound = opts.levels.or(doc.params.levels).unwrap_or(DEFAULT_LEVELS);
    let mut report = Report::new("almost");
    report.param("depth", depth);
    report.param("levels", bound);
    report.param("field", &decl.field);
    match parse_field(&decl.field).map_err(|e| InputError::new("almost.field", e))? {
        CoeffField::Rationals => almost_rows(AlmostContext::new(Rationals, depth), decl, bound, &mut report)?,
        CoeffField::Prime(p) => {
            let f = PrimeField::new(p).map_err(|e| InputError::new("almost.field", e))?;
            almost_rows(AlmostContext::new(f, depth), decl, bound, &mut report)?
        }
    }
    Ok(report)
}

fn almost_rows<F: Field>(
    ctx: AlmostContext<F>,
    decl: &AlmostDecl,
    bound: usize,
    report: &mut Report,
) -> Result<(), CliError>
where
    PolyRing<F>: EuclideanDomain,
{
    let depth = ctx.depth();
    let d0 = decl.base_depth;
    if d0 > depth {
        return Err(InputError::new("almost.base_depth", format!("{d0} exceeds --depth {depth}")).into());
    }
    let alg = ctx.algebra(d0);
    let gens = decl
        .ideal
        .iter()
        .enumerate()
        .map(|(i, s)| elem(&alg, s, &format!("almost.ideal[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rels = Matrix::zeros(alg.ring(), decl.module_gens, decl.module_relations.len());
    for (c, col) in decl.module_relations.iter().enumerate() {
        if col.len() != decl.module_gens {
            return Err(InputError::new(
                format!("almost.module_relations[{c}]"),
                format!("relation has {} entries, expected {}", col.len(), decl.module_gens),
            )
            .into());
        }
        for (i, s) in col.iter().enumerate() {
            rels.set(i, c, elem(&alg, s, &format!("almost.module_relations[{c}][{i}]"))?);
        }
    }
    let module = FpModule::new(&alg, decl.module_gens, rels).map_err(|e| InputError::new("almost.module_relations", e))?;
    let mut m = AlmostModule { depth: d0, module };
    let mut j = SmithIdeal::new(&alg, gens);
    if let Some(dn) = decl.noise_depth {
        if dn < d0 || dn > depth {
            return Err(InputError::new("almost.noise_depth", format!("must lie in {d0}..={depth}")).into());
        }
        m = ctx.with_noise(&m, dn).map_err(|e| InputError::new("almost.noise_depth", e))?;
        j = ctx.base_change_ideal(&j, d0, dn);
        report.param("noise_depth", dn);
    }
    let rep = ctx.almost_adic_check(&j, &m, bound, depth).map_err(tower_error)?;
    for l in &rep.levels {
        let row = Row::at(l.level)
            .with("exact", l.exact)
            .with("almost_by_depth", l.almost.depths.clone())
            .with("almost", l.almost.holds())
            .passed(l.almost.holds());
        report.push(row, || {
            let failing: Vec<String> = l
                .almost
                .depths
                .iter()
                .enumerate()
                .filter(|(_, ok)| !**ok)
                .map(|(d, _)| d.to_string())
                .collect();
            format!("level {}: not almost iso at depths {}", l.level, failing.join(", "))
        });
    }
    // sanity: V/(t) is not almost zero beyond depth 0
    let witness = ctx.almost_zero_to_depth(&ctx.torsion_witness(0), depth);
    let not_almost_zero = depth == 0 || !witness.at(1);
    let row = Row::plain()
        .with("exact_complete", rep.exact())
        .with("almost_complete", rep.almost())
        .with("depth_monotone", rep.monotone())
        .with("v_mod_t_almost_zero_by_depth", witness.depths.clone())
        .passed(rep.monotone() && not_almost_zero);
    report.push(row, || "depth monotonicity or the V/(t) control failed".into());
    Ok(())
}

fn verify_laws(opts: &Options) -> Result<Report, CliError> {
    let ring_name = opts.ring.as_deref().unwrap_or("z4");
    let ring = FiniteRing::parse(ring_name).map_err(|e| InputError::new("--ring", e))?;
    let max_order = opts.max_order.unwrap_or(16);
    if max_order > MAX_ORDER {
        return Err(CliError::Usage(format!("--max-order {max_order} exceeds the guardrail {MAX_ORDER}")));
    }
    let laws = LawSet::parse(opts.laws.as_deref().unwrap_or("all")).map_err(|e| InputError::new("--laws", e))?;
    let corpus = enumerate_modules(&ring, max_order).map_err(|e| InputError::new("--max-order", e))?;
    let (pair, triple) = (max_order, max_order / 2);
    let runner = |jobs: &[LawJob], check: &(dyn Fn(&LawJob) -> bool + Sync)| -> Vec<bool> {
        jobs.par_iter().map(check).collect()
    };
    let laws_report =
        run_laws_with(&corpus, &laws, pair, triple, &runner).map_err(|e| InputError::new("--ring", e))?;
    let mut report = Report::new("verify-laws");
    report.param("ring", ring.name());
    report.param("max_order", max_order);
    report.param("pair_bound", pair);
    report.param("triple_bound", triple);
    report.param("laws", opts.laws.as_deref().unwrap_or("all"));
    let counts = corpus.counts();
    let predicted = corpus.matches_prediction();
    let row = Row::plain()
        .with("law", "enumeration")
        .with("modules", corpus.modules.len())
        .with("classes_by_order", json!(counts.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>()))
        .with("matches_partition_count", json!(predicted))
        .passed(predicted != Some(false));
    report.push(row, || "class counts disagree with partition counts".into());
    for t in &laws_report.tallies {
        let row = Row::plain()
            .with("law", t.law.clone())
            .with("arity", t.arity)
            .with("tuples", t.tuples)
            .with("passed_tuples", t.passed)
            .with("counterexamples", t.counterexamples.clone())
            .passed(t.passed == t.tuples);
        report.push(row, || format!("{}: {} counterexamples", t.law, t.tuples - t.passed));
    }
    let agree = check_engine_agreement(&corpus).map_err(|e| InputError::new("--ring", e))?;
    let mut mismatches = agree.tensor_mismatches.clone();
    mismatches.extend(agree.hom_mismatches.iter().cloned());
    mismatches.extend(agree.iso_mismatches.iter().cloned());
    let row = Row::plain()
        .with("law", "engine-oracle-agreement")
        .with("tuples", agree.pairs)
        .with("counterexamples", mismatches)
        .passed(agree.passed());
    report.push(row, || "engine and element oracle disagree".into());
    report.param("arrows", laws_report.arrows);
    Ok(report)
}
