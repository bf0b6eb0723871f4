//! Matrices over Euclidean rings with certified Smith normal forms,
//! linear solving, kernels and images.

mod matrix;
mod snf;

use alloc::vec::Vec;

use thiserror::Error;

use crate::ring::EuclideanDomain;

pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: matrix has {rows} rows but right-hand side has {rhs}")]
    Shape { rows: usize, rhs: usize },
}

/// Reusable solver for `A·x = b` over the ring, backed by one Smith form of `A`.
#[derive(Clone, Debug)]
pub struct Solver<R: EuclideanDomain> {
    snf: SmithForm<R>,
}

impl<R: EuclideanDomain> Solver<R> {
    pub fn new(a: &Matrix<R>) -> Self {
        Self {
            snf: smith_normal_form(a),
        }
    }

    pub fn smith_form(&self) -> &SmithForm<R> {
        &self.snf
    }

    /// `Some(x)` with `A·x = b` exactly, or `None` if no solution exists over the ring.
    pub fn solve(&self, b: &[R::Elem]) -> Result<Option<Vec<R::Elem>>, LinalgError> {
        let snf = &self.snf;
        let (m, n) = snf.d.shape();
        if b.len() != m {
            return Err(LinalgError::Shape { rows: m, rhs: b.len() });
        }
        let r = snf.d.ring();
        // D y = U b, x = V y
        let ub = snf.u.mul_vec(b);
        let mut y = alloc::vec![r.zero(); n];
        for (i, c) in ub.iter().enumerate() {
            if i < snf.rank {
                match r.divides(snf.d.get(i, i), c) {
                    Some(q) => y[i] = q,
                    None => return Ok(None),
                }
            } else if !r.is_zero(c) {
                return Ok(None);
            }
        }
        Ok(Some(snf.v.mul_vec(&y)))
    }

    /// Solves column by column; `None` if any column fails.
    pub fn solve_matrix(&self, b: &Matrix<R>) -> Result<Option<Matrix<R>>, LinalgError> {
        let n = self.snf.d.cols();
        let mut cols = Vec::with_capacity(b.cols());
        for col in b.columns() {
            match self.solve(&col)? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(b.ring(), n, &cols)))
    }

    pub fn contains(&self, b: &[R::Elem]) -> bool {
        matches!(self.solve(b), Ok(Some(_)))
    }
}

/// `Some(x)` with `A·x = b`, or `None` when `b` is outside the column span.
pub fn solve_linear<R: EuclideanDomain>(
    a: &Matrix<R>,
    b: &[R::Elem],
) -> Result<Option<Vec<R::Elem>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::Shape {
            rows: a.rows(),
            rhs: b.len(),
        });
    }
    Solver::new(a).solve(b)
}

/// Basis of `{x : A·x = 0}` as columns; free of rank `cols − rank(A)`.
pub fn kernel_basis<R: EuclideanDomain>(a: &Matrix<R>) -> Matrix<R> {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (snf.rank..a.cols()).collect();
    snf.v.select_columns(&idx)
}

/// Basis of the column span of `A`.
pub fn image_basis<R: EuclideanDomain>(a: &Matrix<R>) -> Matrix<R> {
    let snf = smith_normal_form(a);
    let mut basis = snf.u_inv.select_columns(&(0..snf.rank).collect::<Vec<_>>());
    for i in 0..snf.rank {
        basis.scale_col(i, snf.d.get(i, i));
    }
    basis
}

/// Column echelon form by unimodular column operations: at most `rows`
/// nonzero columns spanning the same submodule as the columns of `A`.
pub fn column_echelon<R: EuclideanDomain>(a: &Matrix<R>) -> Matrix<R> {
    let r = a.ring();
    let mut m = a.without_zero_columns();
    let cols = m.cols();
    let mut p = 0;
    for i in 0..m.rows() {
        if p == cols {
            break;
        }
        loop {
            let pivot = (p..cols)
                .filter(|&j| !r.is_zero(m.get(i, j)))
                .min_by(|&x, &y| r.size(m.get(i, x)).cmp(&r.size(m.get(i, y))));
            let Some(j) = pivot else { break };
            m.swap_cols(p, j);
            let mut done = true;
            for j in p + 1..cols {
                if r.is_zero(m.get(i, j)) {
                    continue;
                }
                let (q, rem) = r.div_rem(m.get(i, j), m.get(i, p));
                m.add_col_multiple(j, p, &r.neg(&q));
                if !r.is_zero(&rem) {
                    done = false;
                }
            }
            if done {
                p += 1;
                break;
            }
        }
    }
    m.select_columns(&(0..p).collect::<Vec<_>>())
}
