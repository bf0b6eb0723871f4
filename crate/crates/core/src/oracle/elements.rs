use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{FiniteMap, FiniteModule, FiniteRing};

/// Depth-first search over homomorphisms `M → N`, fixing the images of
/// `M`'s generators one at a time. `allowed` restricts the images to a
/// submodule of `N`. `visit` returns `false` to stop.
fn search(
    m: &FiniteModule,
    n: &FiniteModule,
    allowed: Option<&[bool]>,
    injective: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let gens = m.generators();
    let mut map = alloc::vec![usize::MAX; m.order()];
    map[0] = 0;
    rec(m, n, allowed, injective, &gens, &mut map, alloc::vec![0], visit);
}

#[allow(clippy::too_many_arguments)]
fn rec(
    m: &FiniteModule,
    n: &FiniteModule,
    allowed: Option<&[bool]>,
    injective: bool,
    gens: &[usize],
    map: &mut Vec<usize>,
    span: Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let Some((&g, rest)) = gens.split_first() else {
        return visit(map);
    };
    let q = m.ring().size();
    for y in 0..n.order() {
        if allowed.is_some_and(|a| !a[y]) {
            continue;
        }
        let mut next = map.clone();
        let mut grown = span.clone();
        let mut ok = true;
        'outer: for &s in &span {
            for r in 0..q {
                let x = m.add(s, m.act(r, g));
                let v = n.add(map[s], n.act(r, y));
                if next[x] == usize::MAX {
                    if injective && v == 0 && x != 0 {
                        ok = false;
                        break 'outer;
                    }
                    next[x] = v;
                    grown.push(x);
                } else if next[x] != v {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok && !rec(m, n, allowed, injective, rest, &mut next, grown, visit) {
            return false;
        }
    }
    true
}

pub fn homs(m: &FiniteModule, n: &FiniteModule) -> Vec<FiniteMap> {
    let mut out = Vec::new();
    search(m, n, None, false, &mut |t| {
        out.push(FiniteMap {
            source: m.clone(),
            target: n.clone(),
            table: t.to_vec(),
        });
        true
    });
    out
}

/// `|Hom(M, N')|` for the submodule `N'` of `N` marked by `allowed`.
pub fn count_homs(m: &FiniteModule, n: &FiniteModule, allowed: Option<&[bool]>) -> usize {
    let mut c = 0;
    search(m, n, allowed, false, &mut |_| {
        c += 1;
        true
    });
    c
}

pub fn isomorphisms(m: &FiniteModule, n: &FiniteModule) -> Vec<FiniteMap> {
    let mut out = Vec::new();
    if m.order() == n.order() {
        search(m, n, None, true, &mut |t| {
            out.push(FiniteMap {
                source: m.clone(),
                target: n.clone(),
                table: t.to_vec(),
            });
            true
        });
    }
    out
}

pub fn is_isomorphic(m: &FiniteModule, n: &FiniteModule) -> bool {
    if m.fingerprint() != n.fingerprint() {
        return false;
    }
    let mut found = false;
    search(m, n, None, true, &mut |_| {
        found = true;
        false
    });
    found
}

/// `N^∨ = Hom_Z(N, Q/Z)` with `(r·χ)(x) = χ(r·x)`. Characters are
/// computed as homomorphisms of `Z/c`-modules into `Z/c`, `c` the
/// characteristic of the ring.
pub fn dual(n: &FiniteModule) -> FiniteModule {
    let c = n.ring().characteristic();
    let zc = FiniteRing::zmod(c);
    let k = n.order();
    let mut act = alloc::vec![0u32; c as usize * k];
    for a in 0..k {
        let mut x = 0;
        for s in 0..c as usize {
            act[s * k + a] = x as u32;
            x = n.add(x, a);
        }
    }
    let add = (0..k * k).map(|i| n.add(i / k, i % k) as u32).collect();
    let restricted = FiniteModule::from_tables(&zc, k, add, act);
    let target = FiniteModule::free(&zc, 1);
    let mut chars: Vec<Vec<usize>> = Vec::new();
    search(&restricted, &target, None, false, &mut |t| {
        chars.push(t.to_vec());
        true
    });
    chars.sort();
    let index: BTreeMap<Vec<usize>, usize> = chars.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let size = chars.len();
    let q = n.ring().size();
    let mut add = alloc::vec![0u32; size * size];
    let mut act = alloc::vec![0u32; q * size];
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let s: Vec<usize> = a.iter().zip(b).map(|(x, y)| (x + y) % c as usize).collect();
            add[i * size + j] = index[&s] as u32;
        }
        for r in 0..q {
            let s: Vec<usize> = (0..k).map(|x| a[n.act(r, x)]).collect();
            act[r * size + i] = index[&s] as u32;
        }
    }
    FiniteModule::from_tables(n.ring(), size, add, act)
}

/// `|M ⊗ N| = |Hom(M, N^∨)|`.
pub fn tensor_order(m: &FiniteModule, n: &FiniteModule) -> usize {
    count_homs(m, &dual(n), None)
}

/// Sizes of `X[πⁱ] = {x : πⁱx = 0}` for `i = 1, 2, …` until all of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub order: usize,
    pub killed: Vec<usize>,
}

impl Profile {
    fn build(ring: &FiniteRing, order: usize, count: impl Fn(&[bool]) -> usize, mask: impl Fn(usize) -> Vec<bool>) -> Option<Self> {
        let (pi, _) = ring.uniformizer()?;
        let mut killed = Vec::new();
        let mut p = pi;
        loop {
            let c = count(&mask(p));
            killed.push(c);
            if c == order {
                return Some(Self { order, killed });
            }
            if killed.len() > 64 {
                return None;
            }
            p = ring.mul(p, pi);
        }
    }

    pub fn of_module(x: &FiniteModule) -> Option<Self> {
        Self::build(x.ring(), x.order(), |m| m.iter().filter(|&&b| b).count(), |p| x.killed_by(p))
    }

    pub fn of_hom(m: &FiniteModule, n: &FiniteModule) -> Option<Self> {
        let order = count_homs(m, n, None);
        Self::build(m.ring(), order, |mask| count_homs(m, n, Some(mask)), |p| n.killed_by(p))
    }

    pub fn of_tensor(m: &FiniteModule, n: &FiniteModule) -> Option<Self> {
        Self::of_hom(m, &dual(n))
    }

    /// Exponents `a` of the cyclic summands `R/πᵃ`, ascending.
    pub fn blocks(&self, residue: usize) -> Vec<usize> {
        let log = |x: usize| {
            let mut k = 0;
            let mut y = 1;
            while y < x {
                y *= residue;
                k += 1;
            }
            k
        };
        let c: Vec<usize> = core::iter::once(0).chain(self.killed.iter().map(|&x| log(x))).collect();
        let at_least: Vec<usize> = c.windows(2).map(|w| w[1] - w[0]).collect();
        let mut out = Vec::new();
        for (i, w) in at_least.iter().enumerate() {
            let next = at_least.get(i + 1).copied().unwrap_or(0);
            for _ in 0..w - next {
                out.push(i + 1);
            }
        }
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitReport {
    pub hom_counts: Vec<usize>,
    pub transitions_mono: bool,
    pub colimit_size: usize,
    pub target_size: usize,
    pub bijective: bool,
}

/// `colim Hom(C, M_α) → Hom(C, colim M_α)` for a finite chain of maps
/// `M₀ → M₁ → …`, whose colimit is the last term.
pub fn colimit_hom_check(c: &FiniteModule, chain: &[FiniteMap]) -> ColimitReport {
    let mut modules: Vec<FiniteModule> = chain.iter().map(|f| f.source.clone()).collect();
    if let Some(last) = chain.last() {
        modules.push(last.target.clone());
    }
    let hom_sets: Vec<Vec<FiniteMap>> = modules.iter().map(|m| homs(c, m)).collect();
    // union-find over the disjoint union of the hom sets
    let offsets: Vec<usize> = hom_sets
        .iter()
        .scan(0, |acc, h| {
            let o = *acc;
            *acc += h.len();
            Some(o)
        })
        .collect();
    let total: usize = hom_sets.iter().map(Vec::len).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, f) in chain.iter().enumerate() {
        for (a, h) in hom_sets[i].iter().enumerate() {
            let pushed = f.compose(h).table;
            let b = hom_sets[i + 1].iter().position(|g| g.table == pushed).expect("composite is a hom");
            let (x, y) = (find(&mut parent, offsets[i] + a), find(&mut parent, offsets[i + 1] + b));
            parent[x] = y;
        }
    }
    let mut roots: Vec<usize> = (0..total).map(|x| find(&mut parent, x)).collect();
    roots.sort_unstable();
    roots.dedup();
    let colimit_size = roots.len();
    let target_size = hom_sets.last().map_or(0, Vec::len);
    // each class maps to the pushforward of any member into the last term
    let mut images = Vec::new();
    for root in &roots {
        let (i, a) = hom_sets
            .iter()
            .enumerate()
            .find_map(|(i, h)| {
                (0..h.len())
                    .find(|&a| find(&mut parent.clone(), offsets[i] + a) == *root)
                    .map(|a| (i, a))
            })
            .unwrap();
        let mut f = hom_sets[i][a].clone();
        for t in &chain[i..] {
            f = t.compose(&f);
        }
        images.push(f.table);
    }
    images.sort();
    images.dedup();
    ColimitReport {
        hom_counts: hom_sets.iter().map(Vec::len).collect(),
        transitions_mono: chain.iter().all(FiniteMap::is_injective),
        colimit_size,
        target_size,
        bijective: images.len() == colimit_size && colimit_size == target_size,
    }
}
