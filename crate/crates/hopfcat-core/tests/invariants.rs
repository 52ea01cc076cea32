//! Randomized invariants of the exact linear-algebra layer: canonical
//! reduced bases, rank–nullity, the modular lattice law, quotient
//! splittings, and solver consistency, over ℚ and several prime fields.

use hopfcat_core::field::{FieldSpec, Scalar};
use hopfcat_core::matrix::{sparse_accumulate, sparse_from_map, Matrix, SparseVec};
use hopfcat_core::subspace::{kernel_space, rank, solve_right, Echelon, Subspace};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Prime(97)),
    ]
}

/// A scalar from a small numerator/denominator pair. Over a prime field the
/// denominator is nudged off the zero residue so division stays defined.
fn scalar(field: FieldSpec, num: i64, den: i64) -> Scalar {
    let n = Scalar::from_int(field, num);
    let mut d = Scalar::from_int(field, den);
    if d.is_zero() {
        d = Scalar::one(field);
    }
    n.div(&d).expect("nonzero denominator")
}

#[derive(Debug, Clone)]
struct MatrixData {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<(i64, i64)>,
}

impl MatrixData {
    fn build(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            let (n, d) = self.entries[i * self.cols + j];
            scalar(self.field, n, d)
        })
    }
}

fn matrix_data(max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatrixData> {
    (field_strategy(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(field, rows, cols)| {
        proptest::collection::vec((-5i64..=5, 1i64..=4), rows * cols).prop_map(
            move |entries| MatrixData {
                field,
                rows,
                cols,
                entries,
            },
        )
    })
}

fn row_space(m: &Matrix) -> Subspace {
    Subspace::row_space(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The reduced basis is a canonical form: shuffling the spanning rows,
    /// rescaling them, and adding in sums of pairs never changes the
    /// resulting subspace value, byte for byte.
    #[test]
    fn rref_basis_is_canonical(
        data in matrix_data(6, 6),
        shuffle in proptest::collection::vec(0usize..100, 12),
        scales in proptest::collection::vec((1i64..=5, 1i64..=4), 12),
    ) {
        let m = data.build();
        let base = row_space(&m);
        let mut rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row_vec(i)).collect();
        // Deterministic shuffle driven by the generated indices.
        for (k, s) in shuffle.iter().enumerate() {
            let n = rows.len();
            rows.swap(k % n, s % n);
        }
        // Rescale each row by a nonzero scalar and append sums of adjacent
        // rows: the span is unchanged.
        let mut spanning: Vec<Vec<Scalar>> = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            let (n, d) = scales[i % scales.len()];
            let c = scalar(data.field, n, d);
            let c = if c.is_zero() { Scalar::one(data.field) } else { c };
            spanning.push(r.iter().map(|x| x.mul(&c)).collect());
        }
        for w in rows.windows(2) {
            spanning.push(w[0].iter().zip(&w[1]).map(|(a, b)| a.add(b)).collect());
        }
        let again = Subspace::from_dense_rows(data.field, m.cols(), spanning);
        prop_assert_eq!(base, again);
    }

    /// rank + nullity = number of columns, and the kernel basis really is
    /// annihilated by the matrix.
    #[test]
    fn rank_nullity_and_kernel_membership(data in matrix_data(6, 7)) {
        let m = data.build();
        let ker = kernel_space(&m);
        prop_assert_eq!(rank(&m) + ker.dim(), m.cols());
        for i in 0..ker.dim() {
            prop_assert!(m.apply_sparse(&ker.basis_row_sparse(i)).is_empty());
        }
    }

    /// dim(U + W) + dim(U ∩ W) = dim U + dim W.
    #[test]
    fn sum_intersection_dimension_formula(
        a in matrix_data(5, 6),
        b in proptest::collection::vec((-5i64..=5, 1i64..=4), 30),
    ) {
        let u = row_space(&a.build());
        let w_rows: Vec<Vec<Scalar>> = b
            .chunks_exact(a.cols)
            .map(|ch| ch.iter().map(|&(n, d)| scalar(a.field, n, d)).collect())
            .collect();
        let w = Subspace::from_dense_rows(a.field, a.cols, w_rows);
        let s = u.sum(&w).unwrap();
        let i = u.intersection(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u).unwrap());
        prop_assert!(u.contains_subspace(&i).unwrap());
    }

    /// The modular law: for X ⊆ Z, Z ∩ (Y + X) = (Z ∩ Y) + X.
    #[test]
    fn modular_law(
        z in matrix_data(6, 6),
        y_entries in proptest::collection::vec((-5i64..=5, 1i64..=4), 36),
        keep in 0usize..6,
    ) {
        let z_space = row_space(&z.build());
        // X: the span of a prefix of Z's canonical basis — a subspace of Z
        // by construction.
        let k = keep.min(z_space.dim());
        let x = Subspace::from_sparse_rows(
            z.field,
            z.cols,
            (0..k).map(|i| z_space.basis_row_sparse(i)),
        );
        let y_rows: Vec<Vec<Scalar>> = y_entries
            .chunks_exact(z.cols)
            .map(|ch| ch.iter().map(|&(n, d)| scalar(z.field, n, d)).collect())
            .collect();
        let y = Subspace::from_dense_rows(z.field, z.cols, y_rows);
        let lhs = z_space.intersection(&y.sum(&x).unwrap()).unwrap();
        let rhs = z_space.intersection(&y).unwrap().sum(&x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Quotient splittings: proj·section = id, the section lands on coset
    /// representatives, and v − section(proj v) always falls back into the
    /// subspace being quotiented by.
    #[test]
    fn quotient_split_identities(
        w in matrix_data(4, 6),
        probe in proptest::collection::vec((-5i64..=5, 1i64..=4), 6),
    ) {
        let w_space = row_space(&w.build());
        let split = w_space.quotient_split();
        let q = w.cols - w_space.dim();
        prop_assert_eq!(split.proj.rows(), q);
        prop_assert!(split.proj.mul(&split.section).is_identity());
        for i in 0..w_space.dim() {
            prop_assert!(split.proj.apply_sparse(&w_space.basis_row_sparse(i)).is_empty());
        }
        let v: Vec<Scalar> = probe
            .iter()
            .take(w.cols)
            .map(|&(n, d)| scalar(w.field, n, d))
            .collect();
        let back = split.section.apply_dense(&split.proj.apply_dense(&v));
        let diff: Vec<Scalar> = v.iter().zip(&back).map(|(a, b)| a.sub(b)).collect();
        prop_assert!(w_space.contains_dense(&diff));
    }

    /// Coordinates recompose: any combination of basis rows is recognized as
    /// a member and reproduced exactly from its coordinates.
    #[test]
    fn coords_recompose_members(
        u in matrix_data(5, 7),
        coeffs in proptest::collection::vec((-5i64..=5, 1i64..=4), 5),
    ) {
        let space = row_space(&u.build());
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for i in 0..space.dim() {
            let (n, d) = coeffs[i % coeffs.len()];
            let c = scalar(u.field, n, d);
            sparse_accumulate(&mut acc, &c, &space.basis_row_sparse(i));
        }
        let v: SparseVec = sparse_from_map(acc);
        prop_assert!(space.contains_sparse(&v));
        let coords = space.coords_sparse(&v).unwrap();
        // Recompose through the basis matrix: basisᵀ · coords = v.
        let recomposed = space.basis().transpose().apply_sparse(&coords);
        prop_assert_eq!(recomposed, v);
    }

    /// The right-solver agrees with membership: A·X = B is solvable when B
    /// was manufactured as A·X₀, and the returned solution reproduces B.
    #[test]
    fn solve_right_roundtrip(
        a in matrix_data(5, 5),
        x_entries in proptest::collection::vec((-5i64..=5, 1i64..=4), 15),
    ) {
        let m = a.build();
        let k = 3;
        let x0 = Matrix::from_fn(a.field, m.cols(), k, |i, j| {
            let (n, d) = x_entries[(i * k + j) % x_entries.len()];
            scalar(a.field, n, d)
        });
        let b = m.mul(&x0);
        let solved = solve_right(&m, &b).expect("manufactured system is consistent");
        prop_assert_eq!(m.mul(&solved), b);
    }

    /// Incremental echelon insertion reports rank growth truthfully and its
    /// snapshot rows regenerate the same subspace.
    #[test]
    fn echelon_insert_tracks_rank(data in matrix_data(6, 6)) {
        let m = data.build();
        let mut ech = Echelon::new(data.field, m.cols());
        for i in 0..m.rows() {
            let before = ech.rank();
            let grew = ech.insert(m.row_vec(i));
            prop_assert_eq!(grew, ech.rank() == before + 1);
        }
        let snapshot = Subspace::from_sparse_rows(data.field, m.cols(), ech.rows_sparse());
        prop_assert_eq!(snapshot, ech.into_subspace());
        prop_assert_eq!(Subspace::row_space(&m), Subspace::from_sparse_rows(
            data.field,
            m.cols(),
            (0..m.rows()).map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect::<SparseVec>()
            }),
        ));
    }
}
