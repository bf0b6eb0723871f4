use alloc::vec::Vec;

use super::Matrix;
use crate::ring::EuclideanDomain;

/// `U·A·V = D` with `U, V` invertible over the ring and their inverses recorded.
///
/// The diagonal is `d_1 | d_2 | … | d_rank` (canonical associates) followed by zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<R: EuclideanDomain> {
    pub d: Matrix<R>,
    pub u: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub v: Matrix<R>,
    pub v_inv: Matrix<R>,
    pub rank: usize,
}

impl<R: EuclideanDomain> SmithForm<R> {
    /// The nonzero diagonal entries.
    pub fn invariants(&self) -> Vec<R::Elem> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Re-multiplies the certificate and checks every invariant.
    pub fn verify(&self, a: &Matrix<R>) -> bool {
        let r = a.ring();
        let (m, n) = a.shape();
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        if self.u.mul(&self.u_inv) != Matrix::identity(r, m)
            || self.u_inv.mul(&self.u) != Matrix::identity(r, m)
            || self.v.mul(&self.v_inv) != Matrix::identity(r, n)
            || self.v_inv.mul(&self.v) != Matrix::identity(r, n)
        {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                let x = self.d.get(i, j);
                let on_diag = i == j && i < self.rank;
                if on_diag {
                    if r.is_zero(x) || r.canonical(x) != *x {
                        return false;
                    }
                } else if !r.is_zero(x) {
                    return false;
                }
            }
        }
        (1..self.rank).all(|i| r.divides(self.d.get(i - 1, i - 1), self.d.get(i, i)).is_some())
    }
}

struct Work<R: EuclideanDomain> {
    a: Matrix<R>,
    u: Matrix<R>,
    u_inv: Matrix<R>,
    v: Matrix<R>,
    v_inv: Matrix<R>,
}

impl<R: EuclideanDomain> Work<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += c·row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let neg = self.a.ring().neg(c);
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &neg);
    }

    /// `col[dst] += c·col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let neg = self.a.ring().neg(c);
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &neg);
    }

    fn scale_row(&mut self, i: usize, unit: &R::Elem, inv: &R::Elem) {
        self.a.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, inv);
    }
}

/// Certified Smith normal form. Pivots are always the entry of minimal
/// Euclidean size in the active block, first in row-major order.
pub fn smith_normal_form<R: EuclideanDomain>(a: &Matrix<R>) -> SmithForm<R> {
    let ring = a.ring().clone();
    let (m, n) = a.shape();
    let mut w = Work {
        a: a.clone(),
        u: Matrix::identity(&ring, m),
        u_inv: Matrix::identity(&ring, m),
        v: Matrix::identity(&ring, n),
        v_inv: Matrix::identity(&ring, n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(&w.a, t, |i, j| i >= t && j >= t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if ring.is_zero(w.a.get(i, t)) {
                    continue;
                }
                let (q, r) = ring.div_rem(w.a.get(i, t), w.a.get(t, t));
                w.add_row(i, t, &ring.neg(&q));
                dirty |= !ring.is_zero(&r);
            }
            for j in t + 1..n {
                if ring.is_zero(w.a.get(t, j)) {
                    continue;
                }
                let (q, r) = ring.div_rem(w.a.get(t, j), w.a.get(t, t));
                w.add_col(j, t, &ring.neg(&q));
                dirty |= !ring.is_zero(&r);
            }
            if dirty {
                let (pi, pj) = min_entry(&w.a, t, |i, j| (i == t && j >= t) || (j == t && i >= t))
                    .expect("pivot cross is nonzero");
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // pivot must divide the whole remaining block
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| ring.divides(w.a.get(t, t), w.a.get(i, j)).is_none())
            });
            match bad {
                Some(i) => w.add_row(t, i, &ring.one()),
                None => break,
            }
        }
        let (unit, inv) = ring.canonical_unit(w.a.get(t, t));
        if !ring.is_one(&unit) {
            w.scale_row(t, &unit, &inv);
        }
        t += 1;
    }
    SmithForm {
        d: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        rank: t,
    }
}

fn min_entry<R: EuclideanDomain>(
    a: &Matrix<R>,
    t: usize,
    in_scope: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let r = a.ring();
    let mut best: Option<(usize, usize, R::Size)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if !in_scope(i, j) || r.is_zero(a.get(i, j)) {
                continue;
            }
            let s = r.size(a.get(i, j));
            if best.as_ref().is_none_or(|b| s < b.2) {
                best = Some((i, j, s));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::ring::{Integers, PolyRing, PrimeField};
    use num_bigint::BigInt;

    fn zm(rows: &[&[i64]]) -> Matrix<Integers> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            &Integers,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    fn diag(s: &SmithForm<Integers>) -> Vec<i64> {
        s.invariants()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn identity_is_fixed() {
        let a = Matrix::identity(&Integers, 3);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.u, a);
        assert_eq!(s.v, a);
        assert!(s.verify(&a));
    }

    #[test]
    fn coprime_diagonal() {
        let a = zm(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(diag(&s), vec![1, 6]);
    }

    #[test]
    fn upper_triangular() {
        let a = zm(&[&[4, 6], &[0, 10]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(diag(&s), vec![2, 20]);
    }

    #[test]
    fn negative_and_rectangular() {
        let a = zm(&[&[-3, 6, 9], &[12, -4, 0]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.rank, 2);
        let z = zm(&[&[0, 0], &[0, 0], &[0, 0]]);
        let s = smith_normal_form(&z);
        assert_eq!(s.rank, 0);
        assert!(s.verify(&z));
    }

    #[test]
    fn polynomial_entries() {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), "x");
        let x = r.var_pow(1);
        let x2 = r.var_pow(2);
        let a = Matrix::from_rows(&r, vec![vec![x.clone(), r.zero()], vec![r.zero(), x2.clone()]], 2);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.invariants(), vec![x, x2]);
    }
}
