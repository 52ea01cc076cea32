//! Dense matrices over an exact field, with the tensor-algebra helpers the
//! Hopf layer is built on.
//!
//! Storage is row-major `Vec<Scalar>`; entries are addressed with
//! `m[(row, col)]`. Tensor legs are always flattened row-major with the LEFT
//! factor as the major index: the basis vector `e_i ⊗ e_j` of `V ⊗ W` has flat
//! index `i * dim(W) + j`. Every tensor convention in the crate derives from
//! this one rule.
//!
//! Multiplication walks the nonzero entries of the right factor's columns, so
//! products against the permutation-like structure maps of group algebras cost
//! close to their sparsity rather than the dense cubic bound.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Sparse view of a vector: sorted, zero-free `(index, value)` pairs.
/// Internal currency for structure-map evaluation; public outputs stay dense.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one(field);
        }
        m
    }

    /// Builds from row slices of machine integers; handy for fixtures and CLI.
    pub fn from_int_rows(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Scalar::from_int(field, v);
            }
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    /// Nonzero entries of column `j`, sorted by row.
    pub fn col_sparse(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .filter(|&i| !self[(i, j)].is_zero())
            .map(|i| (i, self[(i, j)].clone()))
            .collect()
    }

    /// All columns as sparse vectors, extracted in one pass.
    pub fn columns_sparse(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = &self[(i, j)];
                if !v.is_zero() {
                    cols[j].push((i, v.clone()));
                }
            }
        }
        cols
    }

    pub fn col_dense(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &SparseVec) {
        for (i, s) in v {
            self[(*i, j)] = s.clone();
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        assert_eq!(self.field, rhs.field, "field mismatch in add");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self[(i, j)].add(&rhs[(i, j)])
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        assert_eq!(self.field, rhs.field, "field mismatch in sub");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self[(i, j)].sub(&rhs[(i, j)])
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self[(i, j)].neg())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self[(i, j)].mul(c))
    }

    /// Matrix product, skipping zero entries of the right factor.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        assert_eq!(self.field, rhs.field, "field mismatch in mul");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for k in 0..rhs.rows {
            for j in 0..rhs.cols {
                let b = &rhs[(k, j)];
                if b.is_zero() {
                    continue;
                }
                for i in 0..self.rows {
                    let a = &self[(i, k)];
                    if a.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Applies the matrix to a sparse vector, producing a sparse result.
    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut acc: Vec<Scalar> = vec![Scalar::zero(self.field); self.rows];
        let mut touched = Vec::new();
        for (j, c) in v {
            debug_assert!(*j < self.cols, "sparse index out of range");
            for i in 0..self.rows {
                let a = &self[(i, *j)];
                if a.is_zero() {
                    continue;
                }
                if acc[i].is_zero() {
                    touched.push(i);
                }
                acc[i] = acc[i].add(&a.mul(c));
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut out = Vec::with_capacity(touched.len());
        for i in touched {
            if !acc[i].is_zero() {
                let val = std::mem::replace(&mut acc[i], Scalar::zero(self.field));
                out.push((i, val));
            }
        }
        out
    }

    pub fn apply_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] = out[i].add(&a.mul(c));
                }
            }
        }
        out
    }

    /// Kronecker product with the crate's row-major leg convention:
    /// `(a ⊗ b)[(i·rb + k, j·cb + l)] = a[(i,j)] · b[(k,l)]`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "field mismatch in kron");
        let mut out = Matrix::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a.mul(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "shape mismatch in vstack");
        assert_eq!(self.field, other.field, "field mismatch in vstack");
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                m[(self.rows + i, j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Checks the two matrices share field and shape; error (not panic) at API
    /// boundaries that accept caller data.
    pub fn check_same_shape(&self, rhs: &Matrix, what: &str) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(format!(
                "{what}: {} vs {}",
                self.field, rhs.field
            )));
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Sparse-vector utilities shared by the structure-map evaluators.
// ---------------------------------------------------------------------------

/// Accumulates `coeff * v` into a BTreeMap-backed sparse accumulator.
pub fn sparse_accumulate(
    acc: &mut std::collections::BTreeMap<usize, Scalar>,
    coeff: &Scalar,
    v: &SparseVec,
) {
    for (i, c) in v {
        let term = coeff.mul(c);
        if term.is_zero() {
            continue;
        }
        match acc.entry(*i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(term);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&term);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

pub fn sparse_from_map(acc: std::collections::BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().collect()
}

/// Sparse tensor `v ⊗ w` with the right leg of dimension `dim_w`.
pub fn sparse_tensor(v: &SparseVec, w: &SparseVec, dim_w: usize) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() * w.len());
    for (i, a) in v {
        for (j, b) in w {
            let c = a.mul(b);
            if !c.is_zero() {
                out.push((i * dim_w + j, c));
            }
        }
    }
    out.sort_unstable_by_key(|(i, _)| *i);
    out
}

pub fn sparse_unit(i: usize, field: FieldSpec) -> SparseVec {
    vec![(i, Scalar::one(field))]
}

pub fn sparse_to_dense(v: &SparseVec, dim: usize, field: FieldSpec) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(field); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Difference of two sparse vectors; empty result means equality.
pub fn sparse_sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut acc = std::collections::BTreeMap::new();
    for (i, c) in a {
        acc.insert(*i, c.clone());
    }
    for (i, c) in b {
        match acc.entry(*i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.neg());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().sub(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
    sparse_from_map(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        let a = Matrix::from_int_rows(fq(), &[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(fq(), 2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = Matrix::from_int_rows(fq(), &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_int_rows(fq(), &[&[5, 6], &[7, 8]]);
        let expect = Matrix::from_int_rows(fq(), &[&[19, 22], &[43, 50]]);
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn product_over_prime_field_reduces_mod_p() {
        let f = FieldSpec::Prime(5);
        let a = Matrix::from_int_rows(f, &[&[2, 3]]);
        let b = Matrix::from_int_rows(f, &[&[4], &[4]]);
        // 2*4 + 3*4 = 20 ≡ 0 mod 5
        assert!(a.mul(&b).is_zero());
    }

    #[test]
    fn kron_follows_row_major_leg_convention() {
        let a = Matrix::from_int_rows(fq(), &[&[1, 2]]);
        let b = Matrix::from_int_rows(fq(), &[&[3], &[4]]);
        let k = a.kron(&b);
        // a: 1x2, b: 2x1 -> k: 2x2 with k[(i*2+r, j*1+c)] = a[i,j]*b[r,c]
        let expect = Matrix::from_int_rows(fq(), &[&[3, 6], &[4, 8]]);
        assert_eq!(k, expect);
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = Matrix::identity(fq(), 3).kron(&Matrix::identity(fq(), 4));
        assert!(k.is_identity());
    }

    #[test]
    fn apply_sparse_agrees_with_dense_product() {
        let a = Matrix::from_int_rows(fq(), &[&[1, 0, 2], &[0, 3, 0]]);
        let v: SparseVec = vec![
            (0, Scalar::from_int(fq(), 5)),
            (2, Scalar::from_int(fq(), -1)),
        ];
        let got = a.apply_sparse(&v);
        assert_eq!(got, vec![(0, Scalar::from_int(fq(), 3))]);
    }

    #[test]
    fn sparse_tensor_flattens_left_major() {
        let v = sparse_unit(1, fq());
        let w = sparse_unit(2, fq());
        assert_eq!(sparse_tensor(&v, &w, 4), sparse_unit(1 * 4 + 2, fq()));
    }

    #[test]
    fn transpose_involution() {
        let a = Matrix::from_int_rows(fq(), &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.transpose().transpose(), a);
    }
}
