use alloc::vec::Vec;
use core::fmt;

use crate::ring::EuclideanDomain;

/// Dense row-major matrix over a Euclidean ring.
///
/// `0×n` and `m×0` matrices are legal and act as zero maps.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: EuclideanDomain> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: EuclideanDomain> Matrix<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Self {
            ring: ring.clone(),
            rows,
            cols,
            data: alloc::vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_fn(ring: &R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(ring: &R, rows: Vec<Vec<R::Elem>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self {
            ring: ring.clone(),
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns(ring: &R, rows: usize, columns: &[Vec<R::Elem>]) -> Self {
        Self::from_fn(ring, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(ring: &R, v: Vec<R::Elem>) -> Self {
        let rows = v.len();
        Self {
            ring: ring.clone(),
            rows,
            cols: 1,
            data: v,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<R::Elem>> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len());
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Self {
            data,
            ..self.clone_shape()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Self {
            data,
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|r, a| r.neg(a))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(|r, a| r.mul(c, a))
    }

    /// Applies `f` entrywise.
    pub fn map(&self, mut f: impl FnMut(&R, &R::Elem) -> R::Elem) -> Self {
        let data = self.data.iter().map(|a| f(&self.ring, a)).collect();
        Self {
            data,
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `[self | other]`
    pub fn hconcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hconcat row mismatch");
        Self::from_fn(&self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// `[self; other]`
    pub fn vconcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vconcat column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(
            &self.ring,
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => self.ring.zero(),
            },
        )
    }

    /// Kronecker product; row `(i, k)` is `i * other.rows + k`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let r = &self.ring;
        Self::from_fn(r, self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (i0, i1) = (i / other.rows, i % other.rows);
            let (j0, j1) = (j / other.cols, j % other.cols);
            r.mul(self.get(i0, j0), other.get(i1, j1))
        })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ring, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Drops zero columns.
    pub fn without_zero_columns(&self) -> Self {
        let keep: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self.ring.is_zero(self.get(i, j))))
            .collect();
        self.select_columns(&keep)
    }

    // elementary operations, used by the normal-form code

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c · row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if self.ring.is_zero(s) {
                continue;
            }
            let t = self.ring.mul(c, s);
            let idx = dst * self.cols + j;
            self.data[idx] = self.ring.add(&self.data[idx], &t);
        }
    }

    /// `col[dst] += c · col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if self.ring.is_zero(s) {
                continue;
            }
            let t = self.ring.mul(c, s);
            let idx = i * self.cols + dst;
            self.data[idx] = self.ring.add(&self.data[idx], &t);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &R::Elem) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = self.ring.mul(c, &self.data[idx]);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &R::Elem) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = self.ring.mul(c, &self.data[idx]);
        }
    }
}

impl<R: EuclideanDomain> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                self.ring.fmt_elem(self.get(i, j), f)?;
            }
        }
        write!(f, "]")
    }
}
