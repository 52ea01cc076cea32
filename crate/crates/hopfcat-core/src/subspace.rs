//! Canonical subspaces of K^d and the eliminations that produce them.
//!
//! A [`Subspace`] always stores the unique reduced-row-echelon basis of its
//! span (deterministic pivoting: first nonzero column left-to-right, rows
//! sorted by pivot). Two subspaces are equal exactly when their stored bases
//! are identical matrices, so subspace comparison is syntactic equality and
//! needs no further normalization.
//!
//! The [`Echelon`] accumulator inserts rows one at a time while keeping the
//! collection fully reduced. Large kernel computations feed it lazily
//! generated condition rows, so the widest object held in memory is the final
//! echelon basis rather than the full condition matrix.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{Matrix, SparseVec};

/// Incremental reduced-row-echelon accumulator.
#[derive(Clone)]
pub struct Echelon {
    width: usize,
    field: FieldSpec,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, width: usize) -> Echelon {
        Echelon {
            width,
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Current basis rows in sparse form (snapshot).
    pub fn rows_sparse(&self) -> Vec<SparseVec> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect()
    }

    /// Reduces `row` in place against the current basis.
    pub fn reduce(&self, row: &mut [Scalar]) {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            // row -= c * r; r[p] == 1 so row[p] becomes 0.
            for (j, rv) in r.iter().enumerate() {
                if !rv.is_zero() {
                    row[j] = row[j].sub(&c.mul(rv));
                }
            }
        }
    }

    /// Inserts one row; returns true when the rank grew.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.width, "row width mismatch");
        self.reduce(&mut row);
        let Some(pivot) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = row[pivot].inv().expect("pivot is nonzero");
        for c in row.iter_mut() {
            if !c.is_zero() {
                *c = c.mul(&inv);
            }
        }
        // Back-substitute so existing rows stay reduced at the new pivot.
        for r in self.rows.iter_mut() {
            let c = r[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (j, nv) in row.iter().enumerate() {
                if !nv.is_zero() {
                    r[j] = r[j].sub(&c.mul(nv));
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(at, pivot);
        self.rows.insert(at, row);
        true
    }

    pub fn insert_sparse(&mut self, row: &SparseVec) -> bool {
        let mut dense = vec![Scalar::zero(self.field); self.width];
        for (i, c) in row {
            dense[*i] = c.clone();
        }
        self.insert(dense)
    }

    /// Finishes into a canonical subspace of K^width.
    pub fn into_subspace(self) -> Subspace {
        let mut basis = Matrix::zeros(self.field, self.rows.len(), self.width);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    basis[(i, j)] = v.clone();
                }
            }
        }
        Subspace {
            field: self.field,
            ambient_dim: self.width,
            basis,
            pivots: self.pivots,
        }
    }

    /// Kernel of the linear system whose equations were inserted as rows:
    /// the standard free-column construction, re-reduced to canonical form.
    pub fn kernel_of_equations(&self) -> Subspace {
        let n = self.width;
        let mut free = Vec::new();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for j in 0..n {
            if !is_pivot[j] {
                free.push(j);
            }
        }
        let mut gen_rows = Vec::with_capacity(free.len());
        for &j in &free {
            let mut v = vec![Scalar::zero(self.field); n];
            v[j] = Scalar::one(self.field);
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if !r[j].is_zero() {
                    v[p] = r[j].neg();
                }
            }
            gen_rows.push(v);
        }
        Subspace::from_dense_rows(self.field, n, gen_rows)
    }
}

/// Result of splitting the ambient along a subspace: a projection with the
/// subspace as exact kernel, and a right-inverse section through canonical
/// coset representatives (the non-pivot coordinates).
#[derive(Debug, Clone)]
pub struct QuotientSplit {
    /// `q × d` projection onto the quotient coordinates.
    pub proj: Matrix,
    /// `d × q` section with `proj · section = identity`.
    pub section: Matrix,
    /// Ambient coordinate indices serving as coset representatives.
    pub coset_cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical span of the given dense rows.
    pub fn from_dense_rows(
        field: FieldSpec,
        ambient_dim: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Subspace {
        let mut ech = Echelon::new(field, ambient_dim);
        for r in rows {
            ech.insert(r);
        }
        ech.into_subspace()
    }

    /// Canonical span of the rows of a matrix.
    pub fn row_space(m: &Matrix) -> Subspace {
        let mut ech = Echelon::new(m.field(), m.cols());
        for i in 0..m.rows() {
            ech.insert(m.row_vec(i));
        }
        ech.into_subspace()
    }

    /// Canonical span of the columns of a matrix (the image of the map).
    pub fn column_space(m: &Matrix) -> Subspace {
        Subspace::row_space(&m.transpose())
    }

    pub fn from_sparse_rows(
        field: FieldSpec,
        ambient_dim: usize,
        rows: impl IntoIterator<Item = SparseVec>,
    ) -> Subspace {
        let mut ech = Echelon::new(field, ambient_dim);
        for r in rows {
            ech.insert_sparse(&r);
        }
        ech.into_subspace()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_row_sparse(&self, i: usize) -> SparseVec {
        crate::matrix::dense_to_sparse(self.basis.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// `d × k` matrix sending subspace coordinates to ambient vectors.
    pub fn inclusion_matrix(&self) -> Matrix {
        self.basis.transpose()
    }

    fn check_compatible(&self, other: &Subspace, what: &str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{what}: {} vs {}",
                self.field, other.field
            )));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "{what}: ambient {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains_dense(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut w = v.to_vec();
        let ech = self.as_echelon();
        ech.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        let dense = crate::matrix::sparse_to_dense(v, self.ambient_dim, self.field);
        self.contains_dense(&dense)
    }

    /// Coordinates of `v` in the canonical basis, or None when `v` is outside
    /// the span. Pivot extraction makes the candidate; an exact residual check
    /// confirms membership.
    pub fn coords_sparse(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut coords = Vec::new();
        let lookup: std::collections::BTreeMap<usize, usize> = self
            .pivots
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        for (idx, c) in v {
            if let Some(&i) = lookup.get(idx) {
                coords.push((i, c.clone()));
            }
        }
        // residual = v - sum coords_i * basis_i
        let mut acc = std::collections::BTreeMap::new();
        crate::matrix::sparse_accumulate(&mut acc, &Scalar::one(self.field), v);
        for (i, c) in &coords {
            crate::matrix::sparse_accumulate(&mut acc, &c.neg(), &self.basis_row_sparse(*i));
        }
        if acc.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn coords_dense(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let sv = crate::matrix::dense_to_sparse(v);
        self.coords_sparse(&sv).map(|c| {
            crate::matrix::sparse_to_dense(&c, self.dim(), self.field)
        })
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other, "containment")?;
        Ok((0..other.dim()).all(|i| self.contains_dense(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other, "sum")?;
        let mut ech = self.as_echelon();
        for i in 0..other.dim() {
            ech.insert(other.basis.row_vec(i));
        }
        Ok(ech.into_subspace())
    }

    /// Intersection by the Zassenhaus double-width elimination.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other, "intersection")?;
        let d = self.ambient_dim;
        let mut ech = Echelon::new(self.field, 2 * d);
        for i in 0..self.dim() {
            let mut row = vec![Scalar::zero(self.field); 2 * d];
            for j in 0..d {
                row[j] = self.basis[(i, j)].clone();
                row[d + j] = self.basis[(i, j)].clone();
            }
            ech.insert(row);
        }
        for i in 0..other.dim() {
            let mut row = vec![Scalar::zero(self.field); 2 * d];
            for j in 0..d {
                row[j] = other.basis[(i, j)].clone();
            }
            ech.insert(row);
        }
        let final_space = ech.into_subspace();
        let mut inter_rows = Vec::new();
        for i in 0..final_space.dim() {
            let row = final_space.basis.row(i);
            if row[..d].iter().all(Scalar::is_zero) {
                inter_rows.push(row[d..].to_vec());
            }
        }
        Ok(Subspace::from_dense_rows(self.field, d, inter_rows))
    }

    /// Projection/section pair splitting the ambient along this subspace.
    pub fn quotient_split(&self) -> QuotientSplit {
        let d = self.ambient_dim;
        let k = self.dim();
        let mut is_pivot = vec![false; d];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let coset_cols: Vec<usize> = (0..d).filter(|&j| !is_pivot[j]).collect();
        let q = d - k;
        let mut proj = Matrix::zeros(self.field, q, d);
        let mut section = Matrix::zeros(self.field, d, q);
        for (t, &j) in coset_cols.iter().enumerate() {
            proj[(t, j)] = Scalar::one(self.field);
            section[(j, t)] = Scalar::one(self.field);
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            for (t, &j) in coset_cols.iter().enumerate() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    proj[(t, p)] = b.neg();
                }
            }
        }
        QuotientSplit {
            proj,
            section,
            coset_cols,
        }
    }

    fn as_echelon(&self) -> Echelon {
        Echelon {
            width: self.ambient_dim,
            field: self.field,
            rows: (0..self.dim()).map(|i| self.basis.row_vec(i)).collect(),
            pivots: self.pivots.clone(),
        }
    }
}

/// Rank of a matrix (echelon insertion of its rows).
pub fn rank(m: &Matrix) -> usize {
    let mut ech = Echelon::new(m.field(), m.cols());
    for i in 0..m.rows() {
        ech.insert(m.row_vec(i));
    }
    ech.rank()
}

/// Null space `{v : m·v = 0}` of the linear map `m : K^cols → K^rows`.
pub fn kernel_space(m: &Matrix) -> Subspace {
    let mut ech = Echelon::new(m.field(), m.cols());
    for i in 0..m.rows() {
        ech.insert(m.row_vec(i));
    }
    ech.kernel_of_equations()
}

/// Null space of a linear map presented as lazily generated equation rows.
pub fn kernel_of_rows(
    field: FieldSpec,
    width: usize,
    rows: impl IntoIterator<Item = SparseVec>,
) -> Subspace {
    let mut ech = Echelon::new(field, width);
    for r in rows {
        ech.insert_sparse(&r);
    }
    ech.kernel_of_equations()
}

/// Solves `a · x = b` column by column; None when any column is unsolvable.
pub fn solve_right(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "shape mismatch in solve");
    assert_eq!(a.field(), b.field(), "field mismatch in solve");
    // Echelon of [aᵀ; I] tracks the coefficient expression of each reduced row.
    // Simpler: reduce the augmented system [a | b] and back-read solutions.
    let n = a.cols();
    let k = b.cols();
    let mut ech = Echelon::new(a.field(), n + k);
    for i in 0..a.rows() {
        let mut row = Vec::with_capacity(n + k);
        row.extend(a.row_vec(i));
        row.extend(b.row_vec(i));
        ech.insert(row);
    }
    let space = ech.into_subspace();
    // A pivot in the b-block means some equation forces 0 = nonzero: no solution.
    if space.pivots().iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(a.field(), n, k);
    for (i, &p) in space.pivots().iter().enumerate() {
        for j in 0..k {
            let v = &space.basis()[(i, n + j)];
            if !v.is_zero() {
                x[(p, j)] = v.clone();
            }
        }
    }
    // The construction leaves free variables at zero; verify exactly.
    if a.mul(&x) == *b {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn sp(rows: &[&[i64]], ambient: usize) -> Subspace {
        let m = Matrix::from_int_rows(fq(), rows);
        assert_eq!(m.cols(), ambient);
        Subspace::row_space(&m)
    }

    #[test]
    fn rref_is_canonical_for_reordered_spanning_sets() {
        let a = sp(&[&[1, 2, 3], &[0, 1, 1]], 3);
        let b = sp(&[&[0, 1, 1], &[1, 2, 3], &[1, 3, 4]], 3);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn rref_over_f2_spans_expected_dimension() {
        let f = FieldSpec::Prime(2);
        let m = Matrix::from_int_rows(f, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        // Over F2 the third row is the sum of the first two.
        let s = Subspace::row_space(&m);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn kernel_dimension_matches_rank_nullity() {
        // Counit-like all-ones row on a 6-dimensional carrier: rank 1, nullity 5.
        let m = Matrix::from_int_rows(fq(), &[&[1, 1, 1, 1, 1, 1]]);
        let k = kernel_space(&m);
        assert_eq!(k.dim(), 5);
        for i in 0..k.dim() {
            let img = m.apply_dense(k.basis().row(i));
            assert!(img.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn kernel_of_injective_map_is_zero() {
        let m = Matrix::from_int_rows(fq(), &[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(kernel_space(&m).is_zero());
    }

    #[test]
    fn sum_and_intersection_satisfy_dimension_formula() {
        let u = sp(&[&[1, 0, 0, 0], &[0, 1, 0, 0]], 4);
        let v = sp(&[&[0, 1, 0, 0], &[0, 0, 1, 0]], 4);
        let s = u.sum(&v).unwrap();
        let i = u.intersection(&v).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(i.dim(), 1);
        assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        assert!(u.contains_subspace(&i).unwrap());
        assert!(v.contains_subspace(&i).unwrap());
        assert!(s.contains_subspace(&u).unwrap());
    }

    #[test]
    fn intersection_of_disjoint_lines_is_zero() {
        let u = sp(&[&[1, 0]], 2);
        let v = sp(&[&[0, 1]], 2);
        assert!(u.intersection(&v).unwrap().is_zero());
    }

    #[test]
    fn quotient_split_section_is_right_inverse_and_kernel_is_subspace() {
        let w = sp(&[&[1, 0, 2], &[0, 1, -1]], 3);
        let qs = w.quotient_split();
        assert!(qs.proj.mul(&qs.section).is_identity());
        // proj kills exactly the subspace
        for i in 0..w.dim() {
            let img = qs.proj.apply_dense(w.basis().row(i));
            assert!(img.iter().all(Scalar::is_zero));
        }
        assert_eq!(kernel_space(&qs.proj), w);
        assert_eq!(qs.coset_cols, vec![2]);
    }

    #[test]
    fn quotient_split_of_zero_subspace_is_identity() {
        let w = Subspace::zero(fq(), 3);
        let qs = w.quotient_split();
        assert!(qs.proj.is_identity());
        assert!(qs.section.is_identity());
    }

    #[test]
    fn coords_recover_membership_and_reject_outsiders() {
        let w = sp(&[&[1, 0, 1], &[0, 1, 1]], 3);
        let inside = crate::matrix::dense_to_sparse(&[
            Scalar::from_int(fq(), 2),
            Scalar::from_int(fq(), 3),
            Scalar::from_int(fq(), 5),
        ]);
        let coords = w.coords_sparse(&inside).expect("2e0+3e1+5e2 = 2b0+3b1");
        assert_eq!(
            coords,
            vec![
                (0, Scalar::from_int(fq(), 2)),
                (1, Scalar::from_int(fq(), 3))
            ]
        );
        let outside = crate::matrix::dense_to_sparse(&[
            Scalar::from_int(fq(), 1),
            Scalar::from_int(fq(), 0),
            Scalar::from_int(fq(), 0),
        ]);
        assert!(w.coords_sparse(&outside).is_none());
    }

    #[test]
    fn mixed_fields_are_rejected_not_mangled() {
        let u = sp(&[&[1, 0]], 2);
        let m = Matrix::from_int_rows(FieldSpec::Prime(3), &[&[1, 0]]);
        let v = Subspace::row_space(&m);
        assert!(matches!(u.sum(&v), Err(Error::FieldMismatch(_))));
        assert!(matches!(u.intersection(&v), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn solve_right_finds_exact_solutions_and_detects_inconsistency() {
        let a = Matrix::from_int_rows(fq(), &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_int_rows(fq(), &[&[5], &[6]]);
        let x = solve_right(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        // Inconsistent: second equation contradicts the first.
        let bad_a = Matrix::from_int_rows(fq(), &[&[1, 1], &[2, 2]]);
        let bad_b = Matrix::from_int_rows(fq(), &[&[1], &[3]]);
        assert!(solve_right(&bad_a, &bad_b).is_none());
    }

    #[test]
    fn lazy_kernel_matches_dense_kernel() {
        let m = Matrix::from_int_rows(fq(), &[&[1, 2, 3, 4], &[0, 1, 0, 1], &[1, 3, 3, 5]]);
        let dense = kernel_space(&m);
        let lazy = kernel_of_rows(
            fq(),
            4,
            (0..m.rows()).map(|i| crate::matrix::dense_to_sparse(m.row(i))),
        );
        assert_eq!(dense, lazy);
    }
}
