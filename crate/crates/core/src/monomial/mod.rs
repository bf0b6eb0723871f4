//! Truncation towers of monomial ideals in `k[x₁, …, x_r]`, where every
//! `A/Iⁿ⁺¹` has an explicit basis of standard monomials.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Reverse;

use thiserror::Error;

use crate::fpmod::Algebra;
use crate::ring::{Field, PolyRing};
use crate::tower::{SmithIdeal, Tower, TowerError};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("A/I^{level} is infinite-dimensional: no pure power of {var} in the ideal")]
    InfiniteDimensional { level: usize, var: String },
    #[error("monomial has {got} exponents, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("cannot parse monomial '{0}'")]
    Parse(String),
}

/// Variable names: `x, y, z` for up to three variables, else `x1, …, xr`.
pub fn variable_names(vars: usize) -> Vec<String> {
    if vars <= 3 {
        ["x", "y", "z"][..vars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=vars).map(|i| alloc::format!("x{i}")).collect()
    }
}

/// Parses a comma-separated list such as `x^2*y, z` or `1`.
pub fn parse_monomials(vars: usize, text: &str) -> Result<Vec<Exponent>, MonomialError> {
    let names = variable_names(vars);
    text.split(',')
        .map(|m| {
            let m = m.trim();
            let mut e = alloc::vec![0u32; vars];
            if m == "1" {
                return Ok(e);
            }
            for factor in m.split('*') {
                let factor = factor.trim();
                let (name, pow) = match factor.split_once('^') {
                    Some((n, p)) => (n.trim(), p.trim().parse::<u32>().map_err(|_| MonomialError::Parse(m.into()))?),
                    None => (factor, 1),
                };
                let i = names
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| MonomialError::Parse(m.into()))?;
                e[i] += pow;
            }
            Ok(e)
        })
        .collect()
}

pub fn format_monomial(e: &[u32]) -> String {
    let names = variable_names(e.len());
    let parts: Vec<String> = e
        .iter()
        .zip(&names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, v)| if *k == 1 { v.clone() } else { alloc::format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Exponent>) -> Vec<Exponent> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| !gens.iter().enumerate().any(|(k, h)| k != i && divides(h, g)))
        .collect();
    let mut out: Vec<Exponent> = gens.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
    sort_deglex(&mut out);
    out
}

/// Total degree first, then lexicographically larger exponents first.
fn sort_deglex(v: &mut [Exponent]) {
    v.sort_by_key(|e| (e.iter().sum::<u32>(), Reverse(e.clone())));
}

/// `k[x₁…x_r]` with a monomial ideal `I`.
#[derive(Clone, Debug)]
pub struct MonomialLocalRing<F: Field> {
    field: F,
    vars: usize,
    gens: Vec<Exponent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialLevel {
    pub n: usize,
    /// `dim A/Iⁿ⁺¹`
    pub algebra_dim: usize,
    /// `dim I/Iⁿ⁺¹`
    pub ideal_dim: usize,
    /// `dim Iⁿ/Iⁿ⁺¹`
    pub graded_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialTower {
    pub levels: Vec<MonomialLevel>,
    pub transitions_surjective: bool,
    pub consistent: bool,
    pub additive: bool,
}

impl<F: Field> MonomialLocalRing<F> {
    pub fn new(field: F, vars: usize, gens: Vec<Exponent>) -> Result<Self, MonomialError> {
        if let Some(g) = gens.iter().find(|g| g.len() != vars) {
            return Err(MonomialError::Arity {
                expected: vars,
                got: g.len(),
            });
        }
        Ok(Self {
            field,
            vars,
            gens: minimalize(gens),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.gens
    }

    /// Minimal generators of `Iⁿ`.
    pub fn power_generators(&self, n: usize) -> Vec<Exponent> {
        let mut cur = alloc::vec![alloc::vec![0u32; self.vars]];
        for _ in 0..n {
            let next = cur
                .iter()
                .flat_map(|a| self.gens.iter().map(move |g| a.iter().zip(g).map(|(x, y)| x + y).collect()))
                .collect();
            cur = minimalize(next);
        }
        cur
    }

    fn in_power(&self, e: &[u32], gens: &[Exponent]) -> bool {
        gens.iter().any(|g| divides(g, e))
    }

    /// Exponent bounds of the box containing all standard monomials of `A/Iⁿ⁺¹`.
    fn box_bounds(&self, n: usize) -> Result<Vec<u32>, MonomialError> {
        let gens = self.power_generators(n + 1);
        let names = variable_names(self.vars);
        (0..self.vars)
            .map(|i| {
                gens.iter()
                    .filter(|g| g.iter().enumerate().all(|(k, x)| k == i || *x == 0))
                    .map(|g| g[i])
                    .min()
                    .ok_or_else(|| MonomialError::InfiniteDimensional {
                        level: n + 1,
                        var: names[i].clone(),
                    })
            })
            .collect()
    }

    fn box_monomials(bounds: &[u32]) -> Vec<Exponent> {
        let mut out = alloc::vec![Vec::new()];
        for &b in bounds {
            out = out
                .into_iter()
                .flat_map(|e: Exponent| {
                    (0..b.max(1)).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// Standard monomials of `A/Iⁿ⁺¹` in degree-lex order.
    pub fn quotient_basis(&self, n: usize) -> Result<Vec<Exponent>, MonomialError> {
        let bounds = self.box_bounds(n)?;
        let gens = self.power_generators(n + 1);
        let mut out: Vec<Exponent> = Self::box_monomials(&bounds)
            .into_iter()
            .filter(|e| !self.in_power(e, &gens))
            .collect();
        sort_deglex(&mut out);
        Ok(out)
    }

    /// `dim Iⁿ/Iⁿ⁺¹` for `n = 0..=N`, by counting monomials in `Iⁿ \ Iⁿ⁺¹`.
    pub fn hilbert_graded_dims(&self, bound: usize) -> Result<Vec<usize>, MonomialError> {
        (0..=bound)
            .map(|n| {
                let bounds = self.box_bounds(n)?;
                let (lo, hi) = (self.power_generators(n), self.power_generators(n + 1));
                Ok(Self::box_monomials(&bounds)
                    .iter()
                    .filter(|e| self.in_power(e, &lo) && !self.in_power(e, &hi))
                    .count())
            })
            .collect()
    }

    pub fn monomial_tower(&self, bound: usize) -> Result<MonomialTower, MonomialError> {
        let bases = (0..=bound)
            .map(|n| self.quotient_basis(n))
            .collect::<Result<Vec<_>, _>>()?;
        let graded = self.hilbert_graded_dims(bound)?;
        let base_dim = bases[0].len();
        let levels: Vec<MonomialLevel> = bases
            .iter()
            .enumerate()
            .map(|(n, b)| MonomialLevel {
                n,
                algebra_dim: b.len(),
                ideal_dim: b.len() - base_dim,
                graded_dim: graded[n],
            })
            .collect();
        let transitions_surjective = bases.windows(2).all(|w| w[0].iter().all(|e| w[1].contains(e)));
        let top = &bases[bound];
        let consistent = (0..=bound).all(|m| {
            let gens = self.power_generators(m + 1);
            let mut re: Vec<Exponent> = top.iter().filter(|e| !self.in_power(e, &gens)).cloned().collect();
            sort_deglex(&mut re);
            re == bases[m]
        });
        let mut acc = 0;
        let additive = levels.iter().all(|l| {
            acc += l.graded_dim;
            acc == l.algebra_dim
        });
        Ok(MonomialTower {
            levels,
            transitions_surjective,
            consistent,
            additive,
        })
    }

    /// For one variable, the same ideal in `k[x]` as a principal Smith ideal.
    pub fn univariate_ideal(&self) -> Option<SmithIdeal<PolyRing<F>>> {
        if self.vars != 1 {
            return None;
        }
        let ring = PolyRing::new(self.field.clone(), "x");
        let gens = self.gens.iter().map(|g| ring.var_pow(g[0] as usize)).collect();
        Some(SmithIdeal::new(&Algebra::base_ring(ring), gens))
    }

    /// For `r = 1`, the invariant factors of the PID tower are `x^{dim}` on
    /// both components at every level `n ≤ N`.
    pub fn agrees_with_pid_engine(&self, bound: usize) -> Result<Option<bool>, TowerError> {
        let Some(j) = self.univariate_ideal() else {
            return Ok(None);
        };
        let Ok(mono) = self.monomial_tower(bound) else {
            return Ok(None);
        };
        let ring = PolyRing::new(self.field.clone(), "x");
        let expect = |d: usize| if d == 0 { Vec::new() } else { alloc::vec![ring.var_pow(d)] };
        let tower = Tower::build(&j, bound)?;
        Ok(Some(tower.levels.iter().zip(&mono.levels).all(|(l, m)| {
            let b = l.bottom().invariant_factors();
            let t = l.ideal_part().invariant_factors();
            b.free_rank == 0 && t.free_rank == 0 && b.torsion == expect(m.algebra_dim) && t.torsion == expect(m.ideal_dim)
        })))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;

    fn ring(vars: usize, text: &str) -> MonomialLocalRing<Rationals> {
        MonomialLocalRing::new(Rationals, vars, parse_monomials(vars, text).unwrap()).unwrap()
    }

    #[test]
    fn bases() {
        let r = ring(2, "x, y");
        let b: Vec<String> = r.quotient_basis(1).unwrap().iter().map(|e| format_monomial(e)).collect();
        assert_eq!(b, ["1", "x", "y"]);
        assert_eq!(r.quotient_basis(0).unwrap().len(), 1);
        assert_eq!(ring(1, "x^2").quotient_basis(1).unwrap().len(), 4);
    }

    #[test]
    fn graded_dims() {
        assert_eq!(ring(2, "x,y").hilbert_graded_dims(4).unwrap(), [1, 2, 3, 4, 5]);
        assert_eq!(ring(1, "x").hilbert_graded_dims(3).unwrap(), [1, 1, 1, 1]);
        assert_eq!(ring(2, "1").hilbert_graded_dims(3).unwrap(), [0, 0, 0, 0]);
        assert_eq!(ring(3, "x,y,z").hilbert_graded_dims(3).unwrap(), [1, 3, 6, 10]);
    }

    #[test]
    fn towers() {
        let t = ring(2, "x,y").monomial_tower(4).unwrap();
        let dims: Vec<usize> = t.levels.iter().map(|l| l.algebra_dim).collect();
        assert_eq!(dims, [1, 3, 6, 10, 15]);
        assert!(t.transitions_surjective && t.consistent && t.additive);
        let t = ring(2, "x^2, x*y, y^3").monomial_tower(3).unwrap();
        assert!(t.transitions_surjective && t.consistent && t.additive);
        let u = ring(2, "1").monomial_tower(2).unwrap();
        assert!(u.levels.iter().all(|l| l.algebra_dim == 0));
    }

    #[test]
    fn infinite_quotients_are_rejected() {
        let err = ring(2, "x").quotient_basis(1).unwrap_err();
        assert!(matches!(err, MonomialError::InfiniteDimensional { .. }));
        assert!(parse_monomials(2, "x*w").is_err());
        assert_eq!(ring(2, "x^2*y, x^3*y^2, y").generators(), [alloc::vec![0, 1]]);
    }

    #[test]
    fn univariate_matches_pid_engine() {
        for text in ["x", "x^2", "x^3"] {
            assert_eq!(ring(1, text).agrees_with_pid_engine(5).unwrap(), Some(true));
        }
    }
}
