//! Dense exact linear algebra over GF(p).
//!
//! Everything downstream (ideal pieces, Koszul homology, contraction kernels,
//! tangent systems) reduces to row reduction of matrices that stay below a few
//! thousand rows, so a dense row-major representation is used throughout.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Row-major dense matrix with entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Outcome of [`Matrix::reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    /// Basis of the right kernel, one vector per free column.
    pub kernel: Vec<Vec<u64>>,
    pub pivot_columns: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from raw entries, reducing them mod p.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        let data = data.into_iter().map(|a| field.reduce(a)).collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend(r.iter().map(|&a| field.reduce(a)));
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_signed_rows(field: PrimeField, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&a| field.from_i64(a)).collect())
            .collect();
        Self::from_rows(field, cols, &rows)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.field.reduce(v);
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend(row.iter().map(|&a| self.field.reduce(a)));
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let acc = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in acc.iter_mut().zip(brow) {
                    *o = (*o + a * b) % f.modulus();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack width");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Brings the matrix to reduced row echelon form in place and returns
    /// the pivot columns. Zero rows are left at the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.field.modulus();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(sel) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if sel != r {
                for j in c..cols {
                    self.data.swap(sel * cols + j, r * cols + j);
                }
            }
            let inv = self.field.inv(self.data[r * cols + c]);
            if inv != 1 {
                for j in c..cols {
                    let e = &mut self.data[r * cols + j];
                    *e = (*e * inv) % p;
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let pivot_tail = &pivot_row[c..];
            let eliminate = |row: &mut [u64]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let m = p - factor;
                for (e, &pv) in row[c..].iter_mut().zip(pivot_tail) {
                    *e = (*e + m * pv) % p;
                }
            };
            before.chunks_exact_mut(cols).for_each(eliminate);
            after.chunks_exact_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminating along the shorter side is cheaper.
        if self.rows > self.cols {
            self.transpose().rank()
        } else {
            self.clone().rref_in_place().len()
        }
    }

    /// Rank, right-kernel basis and pivot columns.
    pub fn reduce(&self) -> Reduction {
        let (r, pivots) = self.rref();
        Reduction {
            rank: pivots.len(),
            kernel: kernel_from_rref(&r, &pivots),
            pivot_columns: pivots,
        }
    }

    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: u64, other: &Matrix) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "add_scaled shape"
        );
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.mul_add(*a, c, b);
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack height");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Column-kernel basis as the columns of a `cols × nullity` matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        let k = self.kernel();
        let mut m = Matrix::zeros(self.field, self.cols, k.len());
        for (j, v) in k.iter().enumerate() {
            for (i, &a) in v.iter().enumerate() {
                m.data[i * k.len() + j] = a;
            }
        }
        m
    }
}

/// Kernel basis read off an RREF matrix: one vector per free column.
pub fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vec<u64>> {
    let f = r.field;
    let cols = r.cols;
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            v
        })
        .collect()
}

/// A linear subspace of GF(p)^n stored as an RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

/// How [`subspace_combine`] should combine two spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Sum,
    Intersection,
    Contains,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combined {
    Span(Subspace),
    Contains(bool),
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u64>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                left: ambient,
                right: v.len(),
            });
        }
        Ok(Self::row_space(&Matrix::from_rows(field, ambient, vectors)))
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis_vectors(&self) -> Vec<Vec<u64>> {
        self.basis.row_vecs()
    }

    /// Remainder of `v` after reduction by the RREF basis; zero iff `v` lies
    /// in the subspace.
    pub fn reduce_vector(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            let m = f.neg(c);
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = f.mul_add(*o, m, b);
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        v.len() == self.ambient() && self.reduce_vector(v).iter().all(|&a| a == 0)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    /// `A ∩ B` from the kernel of the stacked system `[A; B]^T (α, β) = 0`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        let stacked = self.basis.vstack(&other.basis).transpose();
        let k = self.dim();
        let vectors: Vec<Vec<u64>> = stacked
            .kernel()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![0; self.ambient()];
                for (i, &c) in coeffs[..k].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (o, &b) in v.iter_mut().zip(self.basis.row(i)) {
                        *o = f.mul_add(*o, c, b);
                    }
                }
                v
            })
            .collect();
        Subspace::span(f, self.ambient(), &vectors)
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient() && self.basis == other.basis
    }
}

pub fn subspace_combine(a: &Subspace, b: &Subspace, mode: CombineMode) -> Result<Combined> {
    Ok(match mode {
        CombineMode::Sum => Combined::Span(a.sum(b)?),
        CombineMode::Intersection => Combined::Span(a.intersection(b)?),
        CombineMode::Contains => Combined::Contains(a.contains(b)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn check_kernel(m: &Matrix, red: &Reduction) {
        assert_eq!(red.rank + red.kernel.len(), m.cols());
        for v in &red.kernel {
            assert!(m.mul_vec(v).iter().all(|&a| a == 0));
        }
    }

    #[test]
    fn identity_has_full_rank() {
        let m = Matrix::identity(gf(101), 3);
        let red = m.reduce();
        assert_eq!(red.rank, 3);
        assert!(red.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let m = Matrix::zeros(gf(101), 2, 4);
        let red = m.reduce();
        assert_eq!(red.rank, 0);
        assert_eq!(red.kernel.len(), 4);
        check_kernel(&m, &red);
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_signed_rows(gf(101), &[&[1, 2, 3], &[2, 4, 6]]);
        let red = m.reduce();
        assert_eq!(red.rank, 1);
        assert_eq!(red.kernel.len(), 2);
        assert_eq!(red.pivot_columns, vec![0]);
        check_kernel(&m, &red);
    }

    #[test]
    fn empty_matrix() {
        let m = Matrix::zeros(gf(5), 0, 3);
        let red = m.reduce();
        assert_eq!(red.rank, 0);
        assert_eq!(red.kernel.len(), 3);
    }

    #[test]
    fn reduce_is_idempotent_on_rref() {
        let m = Matrix::from_signed_rows(gf(101), &[&[1, 2, 3, 4], &[0, 1, 5, 7], &[1, 3, 8, 11]]);
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        assert_eq!(r1, r2);
        assert_eq!(p1, p2);
    }

    #[test]
    fn coordinate_lines() {
        let f = gf(5);
        let a = Subspace::span(f, 3, &[vec![1, 0, 0]]).unwrap();
        let b = Subspace::span(f, 3, &[vec![0, 1, 0]]).unwrap();
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.intersection(&b).unwrap().dim(), 0);
        assert!(!a.contains(&b).unwrap());
    }

    #[test]
    fn idempotent_combination() {
        let f = gf(5);
        let a = Subspace::span(f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let i = a.intersection(&a).unwrap();
        assert!(i.same_as(&a));
        assert_eq!(
            subspace_combine(&a, &a, CombineMode::Contains).unwrap(),
            Combined::Contains(true)
        );
    }

    #[test]
    fn plane_meets_line_inside_it() {
        let f = gf(101);
        let a = Subspace::span(f, 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::span(f, 3, &[vec![1, 2, 1]]).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.same_as(&b));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = gf(5);
        let a = Subspace::zero(f, 3);
        let b = Subspace::zero(f, 4);
        assert!(matches!(
            subspace_combine(&a, &b, CombineMode::Sum),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
