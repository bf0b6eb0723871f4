//! Resolution of document objects into typed engine values.

use std::collections::BTreeMap;

use adic_smith_core::fpmod::{Algebra, FpModule, ModuleMap};
use adic_smith_core::linalg::Matrix;
use adic_smith_core::ring::expr::parse_elem;
use adic_smith_core::ring::spec::{RingSpec, TypedBase, Value};
use adic_smith_core::ring::{EuclideanDomain, Integers, PolyRing, PrimeField, Rationals};
use adic_smith_core::tower::{SmithIdeal, SmithMorphism};

use crate::doc::{Document, InputError};

pub trait CliRing: EuclideanDomain + Send + Sync + 'static
where
    Self::Elem: Send + Sync,
{
    fn from_value(v: &Value) -> Option<Self::Elem>;
}

impl CliRing for Integers {
    fn from_value(v: &Value) -> Option<Self::Elem> {
        match v {
            Value::Int(x) => Some(x.clone()),
            _ => None,
        }
    }
}

impl CliRing for PolyRing<Rationals> {
    fn from_value(v: &Value) -> Option<Self::Elem> {
        match v {
            Value::RatPoly(x) => Some(x.clone()),
            _ => None,
        }
    }
}

impl CliRing for PolyRing<PrimeField> {
    fn from_value(v: &Value) -> Option<Self::Elem> {
        match v {
            Value::FpPoly(x) => Some(x.clone()),
            _ => None,
        }
    }
}

pub trait AlgebraVisitor {
    type Out;
    fn visit<R: CliRing>(self, alg: Algebra<R>) -> Self::Out
    where
        R::Elem: Send + Sync;
}

fn algebra_of<R: CliRing>(r: R, modulus: Option<Value>) -> Algebra<R>
where
    R::Elem: Send + Sync,
{
    match modulus.and_then(|m| R::from_value(&m)) {
        Some(f) => Algebra::quotient(r, f),
        None => Algebra::base_ring(r),
    }
}

pub fn visit_ring<V: AlgebraVisitor>(spec: &RingSpec, v: V) -> V::Out {
    let m = spec.modulus();
    match spec.typed_base().expect("validated ring") {
        TypedBase::Integers(r) => v.visit(algebra_of(r, m)),
        TypedBase::Rational(r) => v.visit(algebra_of(r, m)),
        TypedBase::Prime(r) => v.visit(algebra_of(r, m)),
    }
}

pub fn elem<R: EuclideanDomain>(alg: &Algebra<R>, src: &str, path: &str) -> Result<R::Elem, InputError> {
    parse_elem(alg.ring(), src)
        .map(|e| alg.reduce(&e))
        .map_err(|e| InputError::new(path, e))
}

/// Every object of the document declared over one ring.
#[derive(Clone, Debug)]
pub struct Typed<R: EuclideanDomain> {
    pub alg: Algebra<R>,
    pub modules: BTreeMap<String, FpModule<R>>,
    pub maps: BTreeMap<String, ModuleMap<R>>,
    pub ideals: BTreeMap<String, SmithIdeal<R>>,
    pub morphisms: BTreeMap<String, SmithMorphism<R>>,
}

pub fn resolve<R: EuclideanDomain>(doc: &Document, ring: &str, alg: &Algebra<R>) -> Result<Typed<R>, InputError> {
    let mut t = Typed {
        alg: alg.clone(),
        modules: BTreeMap::new(),
        maps: BTreeMap::new(),
        ideals: BTreeMap::new(),
        morphisms: BTreeMap::new(),
    };
    for (k, m) in doc.modules.iter().filter(|(_, m)| m.ring == ring) {
        let path = format!("modules.{k}.rels");
        let mut rels = Matrix::zeros(alg.ring(), m.gens, m.rels.len());
        for (j, col) in m.rels.iter().enumerate() {
            if col.len() != m.gens {
                return Err(InputError::new(
                    format!("{path}[{j}]"),
                    format!("relation has {} entries, expected {}", col.len(), m.gens),
                ));
            }
            for (i, s) in col.iter().enumerate() {
                rels.set(i, j, elem(alg, s, &format!("{path}[{j}][{i}]"))?);
            }
        }
        let module = FpModule::new(alg, m.gens, rels).map_err(|e| InputError::new(&path, e))?;
        t.modules.insert(k.clone(), module);
    }
    for (k, f) in &doc.maps {
        let Some(src) = t.modules.get(&f.source) else { continue };
        let path = format!("maps.{k}");
        let tgt = t.modules.get(&f.target).ok_or_else(|| {
            InputError::new(format!("{path}.target"), format!("module '{}' is not over ring '{ring}'", f.target))
        })?;
        if f.matrix.len() != tgt.gens() {
            return Err(InputError::new(
                format!("{path}.matrix"),
                format!("{} rows, expected {} (generators of the target)", f.matrix.len(), tgt.gens()),
            ));
        }
        let mut mat = Matrix::zeros(alg.ring(), tgt.gens(), src.gens());
        for (i, row) in f.matrix.iter().enumerate() {
            if row.len() != src.gens() {
                return Err(InputError::new(
                    format!("{path}.matrix[{i}]"),
                    format!("{} entries, expected {} (generators of the source)", row.len(), src.gens()),
                ));
            }
            for (j, s) in row.iter().enumerate() {
                mat.set(i, j, elem(alg, s, &format!("{path}.matrix[{i}][{j}]"))?);
            }
        }
        let map = ModuleMap::new(src, tgt, mat).map_err(|e| InputError::new(format!("{path}.matrix"), e))?;
        t.maps.insert(k.clone(), map);
    }
    for (k, i) in doc.ideals.iter().filter(|(_, i)| i.ring == ring) {
        let path = format!("ideals.{k}");
        let gens = i
            .generators
            .iter()
            .enumerate()
            .map(|(n, s)| elem(alg, s, &format!("{path}.generators[{n}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let rels = i
            .relations
            .iter()
            .enumerate()
            .map(|(n, s)| elem(alg, s, &format!("{path}.relations[{n}]")))
            .collect::<Result<Vec<_>, _>>()?;
        t.ideals.insert(k.clone(), SmithIdeal::with_relations(alg, rels, gens));
    }
    for (k, m) in &doc.morphisms {
        let Some(src) = t.ideals.get(&m.source) else { continue };
        let path = format!("morphisms.{k}");
        let tgt = t.ideals.get(&m.target).ok_or_else(|| {
            InputError::new(format!("{path}.target"), format!("ideal '{}' is not over ring '{ring}'", m.target))
        })?;
        let b = elem(alg, &m.bottom, &format!("{path}.bottom"))?;
        let mat = Matrix::from_rows(alg.ring(), vec![vec![b]], 1);
        let phi = SmithMorphism::new(src, tgt, mat).map_err(|e| InputError::new(format!("{path}.bottom"), e))?;
        t.morphisms.insert(k.clone(), phi);
    }
    Ok(t)
}

/// Resolves everything over one ring, for validation.
pub fn resolve_all<'a>(doc: &'a Document, ring: &'a str) -> ResolveAll<'a> {
    ResolveAll { doc, ring }
}

pub struct ResolveAll<'a> {
    doc: &'a Document,
    ring: &'a str,
}

impl AlgebraVisitor for ResolveAll<'_> {
    type Out = Result<(), InputError>;

    fn visit<R: CliRing>(self, alg: Algebra<R>) -> Self::Out
    where
        R::Elem: Send + Sync,
    {
        resolve(self.doc, self.ring, &alg).map(|_| ())
    }
}
