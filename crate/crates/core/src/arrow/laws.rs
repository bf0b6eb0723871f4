//! Structure maps of the two monoidal structures on `Ar(C)` and checks of
//! the laws they satisfy.
//!
//! Structure isomorphisms are permutation matrices obtained by tracking every
//! generator of a bracketed product back to the generators of its factors.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::hom::ArrowHom;
use super::{counit, pushout_product, pushout_product_maps, tensor_arrow_maps, tensor_arrows, unit};
use super::{Arrow, ArrowMap, Embedding};
use crate::fpmod::{Algebra, FpError, FpModule, ModuleMap};
use crate::linalg::Matrix;
use crate::ring::EuclideanDomain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Structure {
    /// `f ⊗ g`, unit `id_A`
    Tensor,
    /// `f □ g`, unit `0 → A`
    PushoutProduct,
}

impl Structure {
    pub fn unit<R: EuclideanDomain>(self, alg: &Algebra<R>) -> Arrow<R> {
        let a = FpModule::free(alg, 1);
        match self {
            Structure::Tensor => Arrow::embed(Embedding::L0, &a),
            Structure::PushoutProduct => Arrow::embed(Embedding::L1, &a),
        }
    }

    pub fn product<R: EuclideanDomain>(self, a: &Arrow<R>, b: &Arrow<R>) -> Result<Arrow<R>, FpError> {
        match self {
            Structure::Tensor => tensor_arrows(a, b),
            Structure::PushoutProduct => Ok(pushout_product(a, b)?.arrow),
        }
    }

    pub fn product_maps<R: EuclideanDomain>(self, p: &ArrowMap<R>, q: &ArrowMap<R>) -> Result<ArrowMap<R>, FpError> {
        match self {
            Structure::Tensor => tensor_arrow_maps(p, q),
            Structure::PushoutProduct => pushout_product_maps(p, q),
        }
    }
}

/// A bracketed product of numbered factors. `Unit` is the monoidal unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Unit,
    Leaf(usize),
    Prod(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn prod(a: Bracket, b: Bracket) -> Self {
        Bracket::Prod(Box::new(a), Box::new(b))
    }
}

// (factor, side, generator); the unit factor is `usize::MAX`
type Label = Vec<(usize, u8, usize)>;

const UNIT: usize = usize::MAX;

struct Built<R: EuclideanDomain> {
    arrow: Arrow<R>,
    top: Vec<Label>,
    bottom: Vec<Label>,
}

fn leaf_labels(k: usize, side: u8, n: usize) -> Vec<Label> {
    (0..n).map(|i| alloc::vec![(k, side, i)]).collect()
}

fn pair_labels(a: &[Label], b: &[Label]) -> Vec<Label> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut l = x.clone();
            l.extend(y.iter().copied());
            out.push(l);
        }
    }
    out
}

fn build<R: EuclideanDomain>(
    s: Structure,
    t: &Bracket,
    factors: &[Arrow<R>],
    alg: &Algebra<R>,
) -> Result<Built<R>, FpError> {
    Ok(match t {
        Bracket::Unit | Bracket::Leaf(_) => {
            let (k, arrow) = match t {
                Bracket::Leaf(k) => (*k, factors[*k].clone()),
                _ => (UNIT, s.unit(alg)),
            };
            Built {
                top: leaf_labels(k, 0, arrow.x0().gens()),
                bottom: leaf_labels(k, 1, arrow.x1().gens()),
                arrow,
            }
        }
        Bracket::Prod(l, r) => {
            let a = build(s, l, factors, alg)?;
            let b = build(s, r, factors, alg)?;
            let arrow = s.product(&a.arrow, &b.arrow)?;
            let top = match s {
                Structure::Tensor => pair_labels(&a.top, &b.top),
                Structure::PushoutProduct => {
                    let mut v = pair_labels(&a.top, &b.bottom);
                    v.extend(pair_labels(&a.bottom, &b.top));
                    v
                }
            };
            Built {
                arrow,
                top,
                bottom: pair_labels(&a.bottom, &b.bottom),
            }
        }
    })
}

fn key(l: &Label) -> Label {
    let mut k: Label = l.iter().copied().filter(|x| x.0 != UNIT).collect();
    k.sort_unstable();
    k
}

fn permutation<R: EuclideanDomain>(r: &R, from: &[Label], to: &[Label]) -> Option<Matrix<R>> {
    if from.len() != to.len() {
        return None;
    }
    let index: BTreeMap<Label, usize> = to.iter().enumerate().map(|(i, l)| (key(l), i)).collect();
    let mut m = Matrix::zeros(r, to.len(), from.len());
    for (j, l) in from.iter().enumerate() {
        m.set(*index.get(&key(l))?, j, r.one());
    }
    Some(m)
}

/// The canonical map between two bracketings of the same factors, built on
/// generators and checked to be a well-defined commuting square.
pub fn canonical_map<R: EuclideanDomain>(
    s: Structure,
    from: &Bracket,
    to: &Bracket,
    factors: &[Arrow<R>],
) -> Result<ArrowMap<R>, FpError> {
    let alg = factors
        .first()
        .map(|a| a.x0().algebra().clone())
        .expect("at least one factor");
    let a = build(s, from, factors, &alg)?;
    let b = build(s, to, factors, &alg)?;
    let r = alg.ring();
    let bad = FpError::NotComposable;
    let top = permutation(r, &a.top, &b.top).ok_or(bad.clone())?;
    let bottom = permutation(r, &a.bottom, &b.bottom).ok_or(bad)?;
    let top = ModuleMap::new(a.arrow.x0(), b.arrow.x0(), top)?;
    let bottom = ModuleMap::new(a.arrow.x1(), b.arrow.x1(), bottom)?;
    ArrowMap::new(&a.arrow, &b.arrow, top, bottom)
}

fn leaf(k: usize) -> Bracket {
    Bracket::Leaf(k)
}

/// Associator `(a·b)·c → a·(b·c)` is a well-defined isomorphism.
pub fn check_associator<R: EuclideanDomain>(s: Structure, a: &Arrow<R>, b: &Arrow<R>, c: &Arrow<R>) -> bool {
    let f = [a.clone(), b.clone(), c.clone()];
    let from = Bracket::prod(Bracket::prod(leaf(0), leaf(1)), leaf(2));
    let to = Bracket::prod(leaf(0), Bracket::prod(leaf(1), leaf(2)));
    matches!(canonical_map(s, &from, &to, &f), Ok(m) if m.is_iso())
}

/// Symmetry `a·b → b·a` is an iso and squares to the identity.
pub fn check_symmetry<R: EuclideanDomain>(s: Structure, a: &Arrow<R>, b: &Arrow<R>) -> bool {
    let f = [a.clone(), b.clone()];
    let ab = Bracket::prod(leaf(0), leaf(1));
    let ba = Bracket::prod(leaf(1), leaf(0));
    let (Ok(x), Ok(y)) = (canonical_map(s, &ab, &ba, &f), canonical_map(s, &ba, &ab, &f)) else {
        return false;
    };
    x.is_iso() && y.compose(&x).same_as(&x.source().identity_map())
}

/// Both unitors are isomorphisms.
pub fn check_unitors<R: EuclideanDomain>(s: Structure, a: &Arrow<R>) -> bool {
    let f = [a.clone()];
    let left = Bracket::prod(Bracket::Unit, leaf(0));
    let right = Bracket::prod(leaf(0), Bracket::Unit);
    [left, right]
        .iter()
        .all(|from| matches!(canonical_map(s, from, &leaf(0), &f), Ok(m) if m.is_iso()))
}

/// The hexagon: `(ab)c → a(bc) → (bc)a → b(ca)` equals
/// `(ab)c → (ba)c → b(ac) → b(ca)` where the middle factors act functorially.
pub fn check_hexagon<R: EuclideanDomain>(s: Structure, a: &Arrow<R>, b: &Arrow<R>, c: &Arrow<R>) -> bool {
    let f = [a.clone(), b.clone(), c.clone()];
    let p = Bracket::prod;
    let run = || -> Result<bool, FpError> {
        let ab_c = p(p(leaf(0), leaf(1)), leaf(2));
        let a_bc = p(leaf(0), p(leaf(1), leaf(2)));
        let bc_a = p(p(leaf(1), leaf(2)), leaf(0));
        let b_ca = p(leaf(1), p(leaf(2), leaf(0)));
        let ba_c = p(p(leaf(1), leaf(0)), leaf(2));
        let b_ac = p(leaf(1), p(leaf(0), leaf(2)));
        let path1 = canonical_map(s, &bc_a, &b_ca, &f)?
            .compose(&canonical_map(s, &a_bc, &bc_a, &f)?)
            .compose(&canonical_map(s, &ab_c, &a_bc, &f)?);
        let sigma_ab = canonical_map(s, &p(leaf(0), leaf(1)), &p(leaf(1), leaf(0)), &f)?;
        let sigma_ac = canonical_map(s, &p(leaf(0), leaf(2)), &p(leaf(2), leaf(0)), &f)?;
        let first = s.product_maps(&sigma_ab, &c.identity_map())?;
        let last = s.product_maps(&b.identity_map(), &sigma_ac)?;
        let path2 = last
            .compose(&canonical_map(s, &ba_c, &b_ac, &f)?)
            .compose(&first);
        Ok(path1.same_as(&path2))
    };
    run().unwrap_or(false)
}

/// `cok(a □ b) → cok(a) ⊗ cok(b)`, the identity on generators.
pub fn cok_comparison<R: EuclideanDomain>(a: &Arrow<R>, b: &Arrow<R>) -> Result<ArrowMap<R>, FpError> {
    let left = pushout_product(a, b)?.arrow.cok();
    let right = tensor_arrows(&a.cok(), &b.cok())?;
    let r = a.x0().ring();
    let top = ModuleMap::new(left.x0(), right.x0(), Matrix::identity(r, left.x0().gens()))?;
    let bottom = ModuleMap::new(left.x1(), right.x1(), Matrix::identity(r, left.x1().gens()))?;
    ArrowMap::new(&left, &right, top, bottom)
}

/// `cok` is strong monoidal from `□` to `⊗`.
pub fn check_cok_monoidal<R: EuclideanDomain>(a: &Arrow<R>, b: &Arrow<R>) -> bool {
    matches!(cok_comparison(a, b), Ok(m) if m.is_iso())
}

/// The lax structure map `ker(a)·ker(b) → ker(a ⊗ b)`, identity on `X₀⊗Y₀`.
pub fn ker_lax<R: EuclideanDomain>(s: Structure, a: &Arrow<R>, b: &Arrow<R>) -> Result<ArrowMap<R>, FpError> {
    let src = s.product(&a.ker(), &b.ker())?;
    let tgt = tensor_arrows(a, b)?.ker();
    let top = src.map().lift_through(tgt.map()).ok_or(FpError::NotCommuting)?;
    let bottom = ModuleMap::new(src.x1(), tgt.x1(), Matrix::identity(a.x0().ring(), src.x1().gens()))?;
    ArrowMap::new(&src, &tgt, top, bottom)
}

/// Associativity of the lax structure of `ker`:
/// `ker(α) ∘ lax ∘ (lax·id) = lax ∘ (id·lax) ∘ α`.
pub fn check_ker_lax_coherence<R: EuclideanDomain>(
    s: Structure,
    a: &Arrow<R>,
    b: &Arrow<R>,
    c: &Arrow<R>,
) -> bool {
    let run = || -> Result<bool, FpError> {
        let ab = tensor_arrows(a, b)?;
        let bc = tensor_arrows(b, c)?;
        let route1 = ker_lax(s, &ab, c)?.compose(&s.product_maps(&ker_lax(s, a, b)?, &c.ker().identity_map())?);
        let ks = [a.ker(), b.ker(), c.ker()];
        let p = Bracket::prod;
        let alpha_k = canonical_map(s, &p(p(leaf(0), leaf(1)), leaf(2)), &p(leaf(0), p(leaf(1), leaf(2))), &ks)?;
        let route2 = ker_lax(s, a, &bc)?
            .compose(&s.product_maps(&a.ker().identity_map(), &ker_lax(s, b, c)?)?)
            .compose(&alpha_k);
        let f = [a.clone(), b.clone(), c.clone()];
        let alpha = canonical_map(
            Structure::Tensor,
            &p(p(leaf(0), leaf(1)), leaf(2)),
            &p(leaf(0), p(leaf(1), leaf(2))),
            &f,
        )?;
        Ok(alpha.ker().compose(&route1).same_as(&route2))
    };
    run().unwrap_or(false)
}

/// `ε_{cok a} ∘ cok(η_a) = id` and `ker(ε_a) ∘ η_{ker a} = id`.
pub fn check_triangles<R: EuclideanDomain>(a: &Arrow<R>) -> bool {
    let c = a.cok();
    let t1 = counit(&c).compose(&unit(a).cok());
    let k = a.ker();
    let t2 = counit(a).ker().compose(&unit(&k));
    t1.same_as(&c.identity_map()) && t2.same_as(&k.identity_map())
}

/// The `L_i ⊣ Ev_i ⊣ U_i` bijections, realized by forgetting one side of a
/// square, are isomorphisms of hom modules.
pub fn check_embedding_adjunction<R: EuclideanDomain>(which: Embedding, m: &FpModule<R>, a: &Arrow<R>) -> bool {
    let e = Arrow::embed(which, m);
    let h = match which {
        Embedding::L0 | Embedding::L1 => ArrowHom::new(&e, a),
        Embedding::U0 | Embedding::U1 => ArrowHom::new(a, &e),
    };
    let Ok(h) = h else { return false };
    let forget = match which {
        Embedding::L0 | Embedding::U0 => &h.top,
        Embedding::L1 | Embedding::U1 => &h.bottom,
    };
    forget.is_iso().is_iso()
}

/// `a → ker(cok a)` is an iso exactly when `a` is mono.
pub fn check_unit_mono<R: EuclideanDomain>(a: &Arrow<R>) -> bool {
    unit(a).is_iso() == a.is_mono()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    fn arrows() -> Vec<Arrow<Integers>> {
        let alg = Algebra::base_ring(Integers);
        let z4 = FpModule::cyclic(&alg, BigInt::from(4));
        let z2 = FpModule::cyclic(&alg, BigInt::from(2));
        let into = ModuleMap::new(&z2, &z4, Matrix::from_rows(&Integers, alloc::vec![alloc::vec![BigInt::from(2)]], 1)).unwrap();
        alloc::vec![
            Arrow::new(ModuleMap::scalar(&z4, &BigInt::from(2))),
            Arrow::new(into),
            Arrow::embed(Embedding::L1, &z2),
            Arrow::embed(Embedding::U0, &z4),
        ]
    }

    #[test]
    fn monoidal_structure_maps() {
        let xs = arrows();
        for s in [Structure::Tensor, Structure::PushoutProduct] {
            for a in &xs {
                assert!(check_unitors(s, a));
                for b in &xs {
                    assert!(check_symmetry(s, a, b));
                }
            }
            assert!(check_associator(s, &xs[0], &xs[1], &xs[2]));
            assert!(check_hexagon(s, &xs[0], &xs[1], &xs[3]));
        }
    }

    #[test]
    fn cok_is_strong_and_ker_lax() {
        let xs = arrows();
        for a in &xs {
            assert!(check_triangles(a));
            assert!(check_unit_mono(a));
            for b in &xs {
                assert!(check_cok_monoidal(a, b));
                assert!(ker_lax(Structure::Tensor, a, b).is_ok());
            }
        }
        for s in [Structure::Tensor, Structure::PushoutProduct] {
            assert!(check_ker_lax_coherence(s, &xs[0], &xs[1], &xs[3]));
        }
    }

    #[test]
    fn embeddings() {
        let xs = arrows();
        let alg = Algebra::base_ring(Integers);
        let m = FpModule::cyclic(&alg, BigInt::from(2));
        for a in &xs {
            for e in [Embedding::L0, Embedding::L1, Embedding::U0, Embedding::U1] {
                assert!(check_embedding_adjunction(e, &m, a));
            }
        }
    }
}
