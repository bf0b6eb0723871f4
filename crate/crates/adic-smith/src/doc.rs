//! The JSON input document and its validation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use adic_smith_core::ring::spec::{CoeffField, RingSpec};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::typed::{resolve_all, visit_ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub reason: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, reason: impl fmt::Display) -> Self {
        Self {
            path: path.into(),
            reason: reason.to_string(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.reason)
        } else {
            write!(f, "{}: {}", self.path, self.reason)
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDecl {
    Integers,
    /// `Z/n`.
    Mod { n: u64 },
    Poly { coeff: CoeffDecl, var: String },
    Quotient { base: RingRef, modulus: String },
}

/// `"Q"`, `"F<p>"` or `{"fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDecl {
    Named(String),
    Prime { fp: u64 },
}

impl CoeffDecl {
    fn field(&self) -> Result<CoeffField, String> {
        match self {
            CoeffDecl::Named(s) => parse_field(s),
            CoeffDecl::Prime { fp } => Ok(CoeffField::Prime(*fp)),
        }
    }
}

/// A ring by name or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Named(String),
    Inline(Box<RingDecl>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDecl {
    /// May be omitted when the document declares a single ring.
    #[serde(default)]
    pub ring: String,
    pub gens: usize,
    /// Relation columns, each of length `gens`.
    #[serde(default, alias = "relations")]
    pub rels: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDecl {
    #[serde(alias = "src")]
    pub source: String,
    #[serde(alias = "dst")]
    pub target: String,
    /// Rows of the matrix; column `j` is the image of generator `j`.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDecl {
    #[serde(default)]
    pub ring: String,
    pub generators: Vec<String>,
    /// Extra relations `J`: the ideal lives in `A/J`.
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDecl {
    pub source: String,
    pub target: String,
    /// Image of `1` under the map of ambient rings.
    #[serde(default = "one")]
    pub bottom: String,
}

fn one() -> String {
    "1".into()
}

/// Input of the `almost` command, over `V_d = k[u_d]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlmostDecl {
    /// `Q` or `F<p>`.
    #[serde(default = "rationals")]
    pub field: String,
    /// Depth at which ideal and module are written, variable `u<d>`.
    #[serde(default)]
    pub base_depth: usize,
    pub ideal: Vec<String>,
    #[serde(default = "one_gen")]
    pub module_gens: usize,
    #[serde(default)]
    pub module_relations: Vec<Vec<String>>,
    /// Adds the torsion witness `V_D/(u_D)` as a direct summand.
    #[serde(default)]
    pub noise_depth: Option<usize>,
}

fn rationals() -> String {
    "Q".into()
}

fn one_gen() -> usize {
    1
}

/// Command parameters that name document objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default)]
    pub ideal: Option<String>,
    #[serde(default)]
    pub module: Option<String>,
    #[serde(default)]
    pub morphism: Option<String>,
    #[serde(default)]
    pub levels: Option<usize>,
    #[serde(default)]
    pub depth: Option<usize>,
    /// Power `n` for `yekutieli`; all `1 ≤ n ≤ N` when absent.
    #[serde(default)]
    pub n: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub rings: BTreeMap<String, RingDecl>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDecl>,
    #[serde(default, alias = "arrows")]
    pub maps: BTreeMap<String, MapDecl>,
    #[serde(default)]
    pub ideals: BTreeMap<String, IdealDecl>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, MorphismDecl>,
    #[serde(default)]
    pub almost: Option<AlmostDecl>,
    #[serde(default)]
    pub params: Params,
}

pub fn parse_field(src: &str) -> Result<CoeffField, String> {
    match src {
        "Q" | "QQ" => Ok(CoeffField::Rationals),
        _ => src
            .strip_prefix('F')
            .or_else(|| src.strip_prefix("GF"))
            .and_then(|p| p.parse::<u64>().ok())
            .map(CoeffField::Prime)
            .ok_or_else(|| format!("unknown coefficient field '{src}' (expected Q or F<p>)")),
    }
}

impl Document {
    /// Parses and fully validates a document.
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let mut doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            InputError::new(if path == "." { String::new() } else { path }, e.inner())
        })?;
        doc.default_rings()?;
        doc.validate()?;
        Ok(doc)
    }

    fn default_rings(&mut self) -> Result<(), InputError> {
        let only = (self.rings.len() == 1).then(|| self.rings.keys().next().cloned()).flatten();
        let slots = self
            .modules
            .iter_mut()
            .map(|(k, m)| (format!("modules.{k}.ring"), &mut m.ring))
            .chain(self.ideals.iter_mut().map(|(k, i)| (format!("ideals.{k}.ring"), &mut i.ring)));
        for (path, ring) in slots {
            if ring.is_empty() {
                *ring = only
                    .clone()
                    .ok_or_else(|| InputError::new(path, "a ring is required when the document declares several"))?;
            }
        }
        Ok(())
    }

    pub fn ring(&self, name: &str, path: &str) -> Result<Arc<RingSpec>, InputError> {
        let decl = self
            .rings
            .get(name)
            .ok_or_else(|| InputError::new(path, format!("unknown ring '{name}'")))?;
        self.ring_decl(decl, &format!("rings.{name}"), 0)
    }

    fn ring_decl(&self, decl: &RingDecl, here: &str, depth: usize) -> Result<Arc<RingSpec>, InputError> {
        let spec = match decl {
            RingDecl::Integers => RingSpec::Integers,
            RingDecl::Mod { n } => {
                RingSpec::integers_mod(BigInt::from(*n)).map_err(|e| InputError::new(format!("{here}.n"), e))?
            }
            RingDecl::Poly { coeff, var } => {
                let f = coeff.field().map_err(|e| InputError::new(format!("{here}.coeff"), e))?;
                RingSpec::poly(f, var).map_err(|e| InputError::new(format!("{here}.coeff"), e))?
            }
            RingDecl::Quotient { base, modulus } => {
                if depth > 8 {
                    return Err(InputError::new(format!("{here}.base"), "ring references form a cycle"));
                }
                let b = match base {
                    RingRef::Named(name) => {
                        let d = self.rings.get(name).ok_or_else(|| {
                            InputError::new(format!("{here}.base"), format!("unknown ring '{name}'"))
                        })?;
                        self.ring_decl(d, &format!("rings.{name}"), depth + 1)?
                    }
                    RingRef::Inline(d) => self.ring_decl(d, &format!("{here}.base"), depth + 1)?,
                };
                let m = b
                    .parse_elem(modulus)
                    .map_err(|e| InputError::new(format!("{here}.modulus"), e))?;
                RingSpec::quotient((*b).clone(), &m).map_err(|e| InputError::new(format!("{here}.modulus"), e))?
            }
        };
        Ok(Arc::new(spec))
    }

    fn validate(&self) -> Result<(), InputError> {
        for name in self.rings.keys() {
            let spec = self.ring(name, &format!("rings.{name}"))?;
            visit_ring(&spec, resolve_all(self, name))?;
        }
        // references into rings that do not exist
        for (k, m) in &self.modules {
            self.ring(&m.ring, &format!("modules.{k}.ring"))?;
        }
        for (k, i) in &self.ideals {
            self.ring(&i.ring, &format!("ideals.{k}.ring"))?;
        }
        for (k, f) in &self.maps {
            for (side, name) in [("source", &f.source), ("target", &f.target)] {
                if !self.modules.contains_key(name) {
                    return Err(InputError::new(format!("maps.{k}.{side}"), format!("unknown module '{name}'")));
                }
            }
        }
        for (k, f) in &self.morphisms {
            for (side, name) in [("source", &f.source), ("target", &f.target)] {
                if !self.ideals.contains_key(name) {
                    return Err(InputError::new(format!("morphisms.{k}.{side}"), format!("unknown ideal '{name}'")));
                }
            }
        }
        if let Some(a) = &self.almost {
            parse_field(&a.field).map_err(|e| InputError::new("almost.field", e))?;
        }
        let p = &self.params;
        let refs = [
            ("params.ideal", &p.ideal, self.ideals.contains_key(p.ideal.as_deref().unwrap_or(""))),
            ("params.module", &p.module, self.modules.contains_key(p.module.as_deref().unwrap_or(""))),
            ("params.morphism", &p.morphism, self.morphisms.contains_key(p.morphism.as_deref().unwrap_or(""))),
        ];
        for (path, name, found) in refs {
            if let Some(n) = name {
                if !found {
                    return Err(InputError::new(path, format!("unknown object '{n}'")));
                }
            }
        }
        Ok(())
    }
}
