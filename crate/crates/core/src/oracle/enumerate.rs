use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::elements::{homs, is_isomorphic};
use super::{FiniteMap, FiniteModule, FiniteRing, FiniteRingKind, OracleError};

pub const MAX_ORDER: usize = 64;

/// All isomorphism classes of modules of order at most `max_order`.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub ring: FiniteRing,
    pub max_order: usize,
    pub modules: Vec<FiniteModule>,
    /// Submodules of the ambient free module visited, counted once each.
    pub submodules_seen: usize,
}

impl Corpus {
    pub fn empty(ring: &FiniteRing) -> Self {
        Self {
            ring: ring.clone(),
            max_order: 0,
            modules: Vec::new(),
            submodules_seen: 0,
        }
    }

    /// Class count per order.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for m in &self.modules {
            *out.entry(m.order()).or_insert(0) += 1;
        }
        out
    }

    /// Compares class counts with the partition count; `None` off chain rings.
    pub fn matches_prediction(&self) -> Option<bool> {
        let predicted = predicted_class_count(&self.ring, self.max_order)?;
        Some(predicted == self.counts())
    }

    /// All maps `modules[i] → modules[j]`.
    pub fn maps(&self, i: usize, j: usize) -> Vec<FiniteMap> {
        homs(&self.modules[i], &self.modules[j])
    }
}

/// Smallest prime dividing the residue field sizes; every module of order
/// `≤ B` has at most `log_p B` socle generators.
fn least_residue(ring: &FiniteRing) -> usize {
    match ring.kind() {
        FiniteRingKind::DualF2 => 2,
        FiniteRingKind::ZMod(n) => (2..=n).find(|p| n % p == 0).unwrap() as usize,
    }
}

/// Enumerates submodules of `Rᵏ` of order `≤ max_order` with `k` large
/// enough that every such module embeds (the rings are self-injective),
/// then keeps one representative per isomorphism class.
pub fn enumerate_modules(ring: &FiniteRing, max_order: usize) -> Result<Corpus, OracleError> {
    if max_order > MAX_ORDER {
        return Err(OracleError::BoundTooLarge(max_order));
    }
    if max_order == 0 {
        return Ok(Corpus::empty(ring));
    }
    let p = least_residue(ring);
    let mut k = 0;
    while p.pow(k as u32 + 1) <= max_order {
        k += 1;
    }
    let ambient = FiniteModule::free(ring, k);
    let n = ambient.order();
    let key = |elems: &[usize]| -> Vec<u64> {
        let mut bits = alloc::vec![0u64; n.div_ceil(64)];
        for &e in elems {
            bits[e / 64] |= 1 << (e % 64);
        }
        bits
    };
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let zero = alloc::vec![0usize];
    seen.insert(key(&zero));
    let mut frontier = alloc::vec![zero];
    let mut all: Vec<Vec<usize>> = Vec::new();
    while let Some(s) = frontier.pop() {
        let mut inside = alloc::vec![false; n];
        for &e in &s {
            inside[e] = true;
        }
        for x in 0..n {
            if inside[x] {
                continue;
            }
            let mut gens = s.clone();
            gens.push(x);
            let t = ambient.span(&gens);
            if t.len() > max_order {
                continue;
            }
            if seen.insert(key(&t)) {
                frontier.push(t);
            }
        }
        all.push(s);
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut modules: Vec<FiniteModule> = Vec::new();
    for s in &all {
        let m = ambient.restrict(s);
        let bucket = buckets.entry(m.fingerprint()).or_default();
        if bucket.iter().any(|&i| is_isomorphic(&modules[i], &m)) {
            continue;
        }
        bucket.push(modules.len());
        modules.push(m);
    }
    Ok(Corpus {
        ring: ring.clone(),
        max_order,
        modules,
        submodules_seen: all.len(),
    })
}

/// For a chain ring with residue field of size `p` and length `L`, classes
/// of order `pᵐ` are partitions of `m` into parts of size at most `L`.
pub fn predicted_class_count(ring: &FiniteRing, max_order: usize) -> Option<BTreeMap<usize, usize>> {
    let (pi, p) = ring.uniformizer()?;
    let mut len = 1;
    let mut x = pi;
    while x != 0 {
        x = ring.mul(x, pi);
        len += 1;
    }
    let mut out = BTreeMap::new();
    let mut m = 0;
    while p.pow(m as u32) <= max_order {
        out.insert(p.pow(m as u32), partitions(m, len));
        m += 1;
    }
    Some(out)
}

fn partitions(m: usize, max_part: usize) -> usize {
    if m == 0 {
        return 1;
    }
    (1..=max_part.min(m)).map(|k| partitions(m - k, k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let z4 = enumerate_modules(&FiniteRing::zmod(4), 8).unwrap();
        assert_eq!(z4.counts()[&4], 2);
        assert_eq!(z4.matches_prediction(), Some(true));
        let d = enumerate_modules(&FiniteRing::dual_f2(), 4).unwrap();
        assert_eq!(d.counts()[&4], 2);
        assert_eq!(d.counts()[&1], 1);
        for r in [FiniteRing::zmod(2), FiniteRing::zmod(3)] {
            assert_eq!(enumerate_modules(&r, 16).unwrap().matches_prediction(), Some(true));
        }
        assert_eq!(
            enumerate_modules(&FiniteRing::zmod(4), 65).unwrap_err(),
            OracleError::BoundTooLarge(65)
        );
        let z6 = enumerate_modules(&FiniteRing::zmod(6), 6).unwrap();
        assert_eq!(z6.counts().values().sum::<usize>(), 5);
    }
}
