//! Hopf algebras as structure constants, and the checkers that keep every
//! construction honest.
//!
//! A [`HopfAlgebra`] over a field K with a fixed basis e₀..e_{d−1} is five
//! matrices: multiplication `d × d²`, unit `d × 1`, comultiplication `d² × d`,
//! counit `1 × d`, antipode `d × d`. Tensor legs are flattened row-major with
//! the left leg major (see [`crate::matrix`]).
//!
//! Axiom and morphism checks never materialize Kronecker products of the
//! structure maps; they evaluate both sides of each identity on basis tuples
//! through sparse columns. That keeps a dim-18 smash product or a dim-64
//! tensor square cheap, because group-algebra structure maps have one nonzero
//! per column.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{
    sparse_accumulate, sparse_from_map, sparse_tensor, sparse_unit, Matrix, SparseVec,
};
use crate::report::AxiomReport;
use crate::subspace::{kernel_space, Subspace};

/// Shared handle; algebras are immutable once built, so sharing is free.
pub type Hopf = Arc<HopfAlgebra>;

#[derive(Debug, Clone, PartialEq)]
pub struct HopfAlgebra {
    field: FieldSpec,
    dim: usize,
    /// `d × d²`: column `i·d + j` holds the coordinates of eᵢ·eⱼ.
    pub mult: Matrix,
    /// `d × 1`: coordinates of the unit element.
    pub unit: Matrix,
    /// `d² × d`: column `i` holds Δ(eᵢ) in the flattened tensor square.
    pub comult: Matrix,
    /// `1 × d`: the counit functional.
    pub counit: Matrix,
    /// `d × d`: column `i` holds S(eᵢ).
    pub antipode: Matrix,
    pub name: String,
}

impl HopfAlgebra {
    /// Validates shapes and fields; mathematical axioms are checked separately
    /// by [`check_hopf_axioms`] so that a shape error is never confused with
    /// an axiom failure.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        mult: Matrix,
        unit: Matrix,
        comult: Matrix,
        counit: Matrix,
        antipode: Matrix,
        name: impl Into<String>,
    ) -> Result<HopfAlgebra> {
        if dim == 0 {
            return Err(Error::Malformed("carrier dimension must be positive".into()));
        }
        let shapes = [
            ("mult", &mult, dim, dim * dim),
            ("unit", &unit, dim, 1),
            ("comult", &comult, dim * dim, dim),
            ("counit", &counit, 1, dim),
            ("antipode", &antipode, dim, dim),
        ];
        for (what, m, r, c) in shapes {
            if m.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "{what} is over {}, carrier over {}",
                    m.field(),
                    field
                )));
            }
            if (m.rows(), m.cols()) != (r, c) {
                return Err(Error::DimensionMismatch(format!(
                    "{what} must be {r}x{c}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(HopfAlgebra {
            field,
            dim,
            mult,
            unit,
            comult,
            counit,
            antipode,
            name: name.into(),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_name(mut self, name: impl Into<String>) -> HopfAlgebra {
        self.name = name.into();
        self
    }

    pub fn share(self) -> Hopf {
        Arc::new(self)
    }

    pub fn unit_sparse(&self) -> SparseVec {
        self.unit.col_sparse(0)
    }

    /// Sparse-column evaluator; build once per batch of evaluations.
    pub fn eval(&self) -> Eval<'_> {
        Eval::new(self)
    }
}

// ---------------------------------------------------------------------------
// Column evaluation
// ---------------------------------------------------------------------------

/// Cached sparse columns of one algebra's structure maps.
pub struct Eval<'a> {
    pub algebra: &'a HopfAlgebra,
    mult_cols: Vec<SparseVec>,
    comult_cols: Vec<SparseVec>,
    antipode_cols: Vec<SparseVec>,
    counit_row: Vec<Scalar>,
    unit: SparseVec,
}

impl<'a> Eval<'a> {
    pub fn new(h: &'a HopfAlgebra) -> Eval<'a> {
        Eval {
            algebra: h,
            mult_cols: h.mult.columns_sparse(),
            comult_cols: h.comult.columns_sparse(),
            antipode_cols: h.antipode.columns_sparse(),
            counit_row: h.counit.row_vec(0),
            unit: h.unit.col_sparse(0),
        }
    }
}

/// Column-level access to a Hopf structure, materialized or virtual.
///
/// The virtual implementation ([`TensorPairEval`]) lets subspace closures and
/// induced structures be computed inside a tensor square whose own structure
/// maps would be quadratically larger than anything worth storing.
pub trait HopfOps {
    fn dim(&self) -> usize;
    fn field(&self) -> FieldSpec;
    /// Product of basis vectors eᵢ·eⱼ.
    fn mult_pair(&self, i: usize, j: usize) -> SparseVec;
    /// Δ(eᵢ) as a sparse vector in the flattened tensor square.
    fn comult_basis(&self, i: usize) -> SparseVec;
    fn counit_basis(&self, i: usize) -> Scalar;
    fn antipode_basis(&self, i: usize) -> SparseVec;
    fn unit_vec(&self) -> SparseVec;

    /// Bilinear extension of the product to sparse vectors.
    fn mult_apply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let c = a.mul(b);
                if c.is_zero() {
                    continue;
                }
                sparse_accumulate(&mut acc, &c, &self.mult_pair(*i, *j));
            }
        }
        sparse_from_map(acc)
    }

    fn comult_apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            sparse_accumulate(&mut acc, a, &self.comult_basis(*i));
        }
        sparse_from_map(acc)
    }

    fn antipode_apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            sparse_accumulate(&mut acc, a, &self.antipode_basis(*i));
        }
        sparse_from_map(acc)
    }

    fn counit_apply(&self, x: &SparseVec) -> Scalar {
        let mut out = Scalar::zero(self.field());
        for (i, a) in x {
            out = out.add(&a.mul(&self.counit_basis(*i)));
        }
        out
    }
}

impl HopfOps for Eval<'_> {
    fn dim(&self) -> usize {
        self.algebra.dim
    }

    fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    fn mult_pair(&self, i: usize, j: usize) -> SparseVec {
        self.mult_cols[i * self.algebra.dim + j].clone()
    }

    fn comult_basis(&self, i: usize) -> SparseVec {
        self.comult_cols[i].clone()
    }

    fn counit_basis(&self, i: usize) -> Scalar {
        self.counit_row[i].clone()
    }

    fn antipode_basis(&self, i: usize) -> SparseVec {
        self.antipode_cols[i].clone()
    }

    fn unit_vec(&self) -> SparseVec {
        self.unit.clone()
    }
}

/// The tensor square (or rectangle) A ⊗ B as a virtual Hopf structure.
pub struct TensorPairEval<'a> {
    pub left: Eval<'a>,
    pub right: Eval<'a>,
}

impl<'a> TensorPairEval<'a> {
    pub fn new(a: &'a HopfAlgebra, b: &'a HopfAlgebra) -> Result<TensorPairEval<'a>> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(format!(
                "tensor legs over {} and {}",
                a.field(),
                b.field()
            )));
        }
        Ok(TensorPairEval {
            left: a.eval(),
            right: b.eval(),
        })
    }

    fn split(&self, i: usize) -> (usize, usize) {
        let dr = self.right.dim();
        (i / dr, i % dr)
    }
}

impl HopfOps for TensorPairEval<'_> {
    fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    fn field(&self) -> FieldSpec {
        self.left.field()
    }

    fn mult_pair(&self, i: usize, j: usize) -> SparseVec {
        let (i1, i2) = self.split(i);
        let (j1, j2) = self.split(j);
        sparse_tensor(
            &self.left.mult_pair(i1, j1),
            &self.right.mult_pair(i2, j2),
            self.right.dim(),
        )
    }

    fn comult_basis(&self, i: usize) -> SparseVec {
        // Δ(x ⊗ y) = (x₁ ⊗ y₁) ⊗ (x₂ ⊗ y₂): interleave the leg tensors.
        let (x, y) = self.split(i);
        let d = self.dim();
        let dl = self.left.dim();
        let dr = self.right.dim();
        let dx = self.left.comult_basis(x);
        let dy = self.right.comult_basis(y);
        let mut out = Vec::with_capacity(dx.len() * dy.len());
        for (fx, cx) in &dx {
            let (x1, x2) = (fx / dl, fx % dl);
            for (fy, cy) in &dy {
                let (y1, y2) = (fy / dr, fy % dr);
                let c = cx.mul(cy);
                if !c.is_zero() {
                    out.push(((x1 * dr + y1) * d + (x2 * dr + y2), c));
                }
            }
        }
        out.sort_unstable_by_key(|(i, _)| *i);
        out
    }

    fn counit_basis(&self, i: usize) -> Scalar {
        let (x, y) = self.split(i);
        self.left.counit_basis(x).mul(&self.right.counit_basis(y))
    }

    fn antipode_basis(&self, i: usize) -> SparseVec {
        let (x, y) = self.split(i);
        sparse_tensor(
            &self.left.antipode_basis(x),
            &self.right.antipode_basis(y),
            self.right.dim(),
        )
    }

    fn unit_vec(&self) -> SparseVec {
        sparse_tensor(
            &self.left.unit_vec(),
            &self.right.unit_vec(),
            self.right.dim(),
        )
    }
}

fn sparse_eq(a: &SparseVec, b: &SparseVec) -> bool {
    crate::matrix::sparse_sub(a, b).is_empty()
}

// ---------------------------------------------------------------------------
// Axiom battery
// ---------------------------------------------------------------------------

/// Checks every Hopf-algebra axiom plus cocommutativity, reporting the first
/// witnessing basis tuple per failed axiom. Shape problems are errors, not
/// report entries.
pub fn check_hopf_axioms(h: &HopfAlgebra) -> Result<AxiomReport> {
    let ev = h.eval();
    let d = h.dim;
    let f = h.field;
    let mut report = AxiomReport::new();

    // Associativity: (eᵢeⱼ)e_k = eᵢ(eⱼe_k).
    let mut witness = None;
    'assoc: for i in 0..d {
        for j in 0..d {
            let ij = ev.mult_pair(i, j);
            for k in 0..d {
                let lhs = ev.mult_apply(&ij, &crate::matrix::sparse_unit(k, f));
                let rhs = ev.mult_apply(
                    &crate::matrix::sparse_unit(i, f),
                    &ev.mult_pair(j, k),
                );
                if !sparse_eq(&lhs, &rhs) {
                    witness = Some(vec![i, j, k]);
                    break 'assoc;
                }
            }
        }
    }
    record(&mut report, "assoc", witness);

    // Unit laws.
    let one = ev.unit_vec();
    let mut wl = None;
    let mut wr = None;
    for i in 0..d {
        let e = crate::matrix::sparse_unit(i, f);
        if wl.is_none() && !sparse_eq(&ev.mult_apply(&one, &e), &e) {
            wl = Some(vec![i]);
        }
        if wr.is_none() && !sparse_eq(&ev.mult_apply(&e, &one), &e) {
            wr = Some(vec![i]);
        }
    }
    record(&mut report, "unit-left", wl);
    record(&mut report, "unit-right", wr);

    // Coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ, expanded in the flat cube.
    let mut witness = None;
    for i in 0..d {
        let pairs = ev.comult_basis(i);
        let mut lhs = BTreeMap::new();
        let mut rhs = BTreeMap::new();
        for (flat, c) in &pairs {
            let (a, b) = (flat / d, flat % d);
            for (flat2, c2) in &ev.comult_basis(a) {
                let (a1, a2) = (flat2 / d, flat2 % d);
                let v = c.mul(c2);
                sparse_accumulate(&mut lhs, &v, &vec![((a1 * d + a2) * d + b, Scalar::one(f))]);
            }
            for (flat2, c2) in &ev.comult_basis(b) {
                let (b1, b2) = (flat2 / d, flat2 % d);
                let v = c.mul(c2);
                sparse_accumulate(&mut rhs, &v, &vec![((a * d + b1) * d + b2, Scalar::one(f))]);
            }
        }
        if sparse_from_map(lhs) != sparse_from_map(rhs) {
            witness = Some(vec![i]);
            break;
        }
    }
    record(&mut report, "coassoc", witness);

    // Counit laws: (ε⊗id)Δ = id = (id⊗ε)Δ.
    let mut wl = None;
    let mut wr = None;
    for i in 0..d {
        let e = crate::matrix::sparse_unit(i, f);
        let pairs = ev.comult_basis(i);
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (flat, c) in &pairs {
            let (a, b) = (flat / d, flat % d);
            let cl = c.mul(&ev.counit_basis(a));
            let cr = c.mul(&ev.counit_basis(b));
            sparse_accumulate(&mut left, &cl, &crate::matrix::sparse_unit(b, f));
            sparse_accumulate(&mut right, &cr, &crate::matrix::sparse_unit(a, f));
        }
        if wl.is_none() && !sparse_eq(&sparse_from_map(left), &e) {
            wl = Some(vec![i]);
        }
        if wr.is_none() && !sparse_eq(&sparse_from_map(right), &e) {
            wr = Some(vec![i]);
        }
    }
    record(&mut report, "counit-left", wl);
    record(&mut report, "counit-right", wr);

    // Bialgebra compatibility: Δ(xy) = Δ(x)Δ(y), ε(xy) = ε(x)ε(y),
    // Δ(1) = 1⊗1, ε(1) = 1.
    let mut wmult = None;
    let mut wcounit = None;
    'bial: for i in 0..d {
        for j in 0..d {
            let prod = ev.mult_pair(i, j);
            if wmult.is_none() {
                let lhs = ev.comult_apply(&prod);
                let di = ev.comult_basis(i);
                let dj = ev.comult_basis(j);
                let mut rhs = BTreeMap::new();
                for (fi, ci) in &di {
                    let (a, b) = (fi / d, fi % d);
                    for (fj, cj) in &dj {
                        let (x, y) = (fj / d, fj % d);
                        let c = ci.mul(cj);
                        if c.is_zero() {
                            continue;
                        }
                        let t = sparse_tensor(&ev.mult_pair(a, x), &ev.mult_pair(b, y), d);
                        sparse_accumulate(&mut rhs, &c, &t);
                    }
                }
                if !sparse_eq(&lhs, &sparse_from_map(rhs)) {
                    wmult = Some(vec![i, j]);
                }
            }
            if wcounit.is_none() {
                let lhs = ev.counit_apply(&prod);
                let rhs = ev.counit_basis(i).mul(&ev.counit_basis(j));
                if lhs != rhs {
                    wcounit = Some(vec![i, j]);
                }
            }
            if wmult.is_some() && wcounit.is_some() {
                break 'bial;
            }
        }
    }
    record(&mut report, "bialgebra-mult", wmult);
    record(&mut report, "bialgebra-counit", wcounit);

    let unit_ok = sparse_eq(&ev.comult_apply(&one), &sparse_tensor(&one, &one, d));
    record(&mut report, "bialgebra-unit", (!unit_ok).then(Vec::new));
    let counit_unit_ok = ev.counit_apply(&one).is_one();
    record(&mut report, "bialgebra-counit-unit", (!counit_unit_ok).then(Vec::new));

    // Antipode: m(S⊗id)Δ = uε = m(id⊗S)Δ.
    let mut wl = None;
    let mut wr = None;
    for i in 0..d {
        let pairs = ev.comult_basis(i);
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (flat, c) in &pairs {
            let (a, b) = (flat / d, flat % d);
            let sl = ev.mult_apply(&ev.antipode_basis(a), &crate::matrix::sparse_unit(b, f));
            sparse_accumulate(&mut left, c, &sl);
            let sr = ev.mult_apply(&crate::matrix::sparse_unit(a, f), &ev.antipode_basis(b));
            sparse_accumulate(&mut right, c, &sr);
        }
        let mut expect = BTreeMap::new();
        sparse_accumulate(&mut expect, &ev.counit_basis(i), &one);
        let expect = sparse_from_map(expect);
        if wl.is_none() && sparse_from_map(left) != expect {
            wl = Some(vec![i]);
        }
        if wr.is_none() && sparse_from_map(right) != expect {
            wr = Some(vec![i]);
        }
    }
    record(&mut report, "antipode-left", wl);
    record(&mut report, "antipode-right", wr);

    // S² = id: automatic for cocommutative Hopf algebras, checked exactly.
    let mut witness = None;
    for i in 0..d {
        if ev.antipode_apply(&ev.antipode_basis(i)) != crate::matrix::sparse_unit(i, f) {
            witness = Some(vec![i]);
            break;
        }
    }
    record(&mut report, "antipode-involutive", witness);

    // Cocommutativity: swapping the two legs of Δ(eᵢ) changes nothing.
    let mut witness = None;
    for i in 0..d {
        let pairs = ev.comult_basis(i);
        let swapped: SparseVec = {
            let mut v: SparseVec = pairs
                .iter()
                .map(|(flat, c)| {
                    let (a, b) = (flat / d, flat % d);
                    (b * d + a, c.clone())
                })
                .collect();
            v.sort_unstable_by_key(|(i, _)| *i);
            v
        };
        if !sparse_eq(&pairs, &swapped) {
            witness = Some(vec![i]);
            break;
        }
    }
    record(&mut report, "cocommutative", witness);

    Ok(report)
}

fn record(report: &mut AxiomReport, name: &str, witness: Option<Vec<usize>>) {
    match witness {
        Some(idx) => report.record_fail(name, idx),
        None => report.record_pass(name),
    }
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct HopfMorphism {
    pub source: Hopf,
    pub target: Hopf,
    /// `dim(target) × dim(source)`.
    pub map: Matrix,
}

impl HopfMorphism {
    pub fn new(source: Hopf, target: Hopf, map: Matrix) -> Result<HopfMorphism> {
        if map.field() != source.field() || source.field() != target.field() {
            return Err(Error::FieldMismatch("morphism fields disagree".into()));
        }
        if (map.rows(), map.cols()) != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "morphism map must be {}x{}, got {}x{}",
                target.dim(),
                source.dim(),
                map.rows(),
                map.cols()
            )));
        }
        Ok(HopfMorphism { source, target, map })
    }

    pub fn identity(h: &Hopf) -> HopfMorphism {
        HopfMorphism {
            source: h.clone(),
            target: h.clone(),
            map: Matrix::identity(h.field(), h.dim()),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &HopfMorphism) -> Result<HopfMorphism> {
        if *other.target != *self.source {
            return Err(Error::Diagram(
                "composition: inner target differs from outer source".into(),
            ));
        }
        Ok(HopfMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            map: self.map.mul(&other.map),
        })
    }

    /// The trivial morphism u_B ∘ ε_A.
    pub fn trivial(source: &Hopf, target: &Hopf) -> Result<HopfMorphism> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch("trivial morphism fields disagree".into()));
        }
        let map = target.unit.mul(&source.counit);
        HopfMorphism::new(source.clone(), target.clone(), map)
    }

    pub fn rank(&self) -> usize {
        crate::subspace::rank(&self.map)
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_injective(&self) -> bool {
        kernel_space(&self.map).is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.rank() == self.source.dim()
    }

    /// Image of the source as a subspace of the target carrier.
    pub fn image(&self) -> Subspace {
        Subspace::column_space(&self.map)
    }

    /// Linear kernel (not the Hopf kernel) of the map.
    pub fn linear_kernel(&self) -> Subspace {
        kernel_space(&self.map)
    }
}

/// Verifies the map is a morphism of Hopf algebras: it must respect
/// multiplication, unit, comultiplication, counit, and (checked separately,
/// automatic in the cocommutative world) the antipode.
pub fn check_morphism(f: &HopfMorphism) -> Result<AxiomReport> {
    let s = f.source.eval();
    let t = f.target.eval();
    let ds = f.source.dim();
    let fcols = f.map.columns_sparse();
    let apply = |v: &SparseVec| -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            sparse_accumulate(&mut acc, c, &fcols[*i]);
        }
        sparse_from_map(acc)
    };
    let mut report = AxiomReport::new();

    let mut w = None;
    'mult: for i in 0..ds {
        for j in 0..ds {
            let lhs = apply(&s.mult_pair(i, j));
            let rhs = t.mult_apply(&fcols[i], &fcols[j]);
            if !sparse_eq(&lhs, &rhs) {
                w = Some(vec![i, j]);
                break 'mult;
            }
        }
    }
    record(&mut report, "algebra-mult", w);

    let unit_ok = sparse_eq(&apply(&s.unit_vec()), &t.unit_vec());
    record(&mut report, "algebra-unit", (!unit_ok).then(Vec::new));

    let dt = f.target.dim();
    let mut w = None;
    for i in 0..ds {
        let mut lhs = BTreeMap::new();
        for (flat, c) in &s.comult_basis(i) {
            let (a, b) = (flat / ds, flat % ds);
            let tens = sparse_tensor(&fcols[a], &fcols[b], dt);
            sparse_accumulate(&mut lhs, c, &tens);
        }
        let rhs = t.comult_apply(&fcols[i]);
        if !sparse_eq(&sparse_from_map(lhs), &rhs) {
            w = Some(vec![i]);
            break;
        }
    }
    record(&mut report, "coalgebra-comult", w);

    let mut w = None;
    for i in 0..ds {
        if t.counit_apply(&fcols[i]) != s.counit_basis(i) {
            w = Some(vec![i]);
            break;
        }
    }
    record(&mut report, "coalgebra-counit", w);

    let mut w = None;
    for i in 0..ds {
        let lhs = apply(&s.antipode_basis(i));
        let rhs = t.antipode_apply(&fcols[i]);
        if !sparse_eq(&lhs, &rhs) {
            w = Some(vec![i]);
            break;
        }
    }
    record(&mut report, "antipode-commutes", w);

    Ok(report)
}

/// Convenience: run [`check_morphism`] and turn any failure into an error.
pub fn require_morphism(f: &HopfMorphism, what: &str) -> Result<()> {
    let report = check_morphism(f)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Error::AxiomsFailed {
            subject: what.to_string(),
            report,
        })
    }
}

// ---------------------------------------------------------------------------
// Subobjects
// ---------------------------------------------------------------------------

/// A Hopf subalgebra presented as a canonical subspace of an ambient carrier.
#[derive(Debug, Clone)]
pub struct HopfSubalgebra {
    pub ambient: Hopf,
    pub space: Subspace,
}

impl HopfSubalgebra {
    /// Verifies closure (unit, products, antipode, Δ into the tensor square)
    /// before admitting the subspace as a subalgebra.
    pub fn verified(ambient: Hopf, space: Subspace) -> Result<HopfSubalgebra> {
        if space.ambient_dim() != ambient.dim() || space.field() != ambient.field() {
            return Err(Error::DimensionMismatch(
                "subspace does not live in the ambient carrier".into(),
            ));
        }
        let ev = ambient.eval();
        verify_closure(&ev, &space)?;
        Ok(HopfSubalgebra { ambient, space })
    }

    /// Wraps without re-verifying; for callers that just proved closure.
    pub fn unchecked(ambient: Hopf, space: Subspace) -> HopfSubalgebra {
        HopfSubalgebra { ambient, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn full(ambient: &Hopf) -> HopfSubalgebra {
        HopfSubalgebra {
            ambient: ambient.clone(),
            space: Subspace::full(ambient.field(), ambient.dim()),
        }
    }

    /// The span of the unit: the trivial subalgebra K·1.
    pub fn trivial(ambient: &Hopf) -> HopfSubalgebra {
        let rows = vec![crate::matrix::sparse_to_dense(
            &ambient.unit_sparse(),
            ambient.dim(),
            ambient.field(),
        )];
        HopfSubalgebra {
            ambient: ambient.clone(),
            space: Subspace::from_dense_rows(ambient.field(), ambient.dim(), rows),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.space.dim() == 1 && self.space.contains_sparse(&self.ambient.unit_sparse())
    }

    /// Materializes the subalgebra as a Hopf algebra in the canonical basis,
    /// together with its inclusion morphism.
    pub fn object(&self, name: impl Into<String>) -> Result<(Hopf, HopfMorphism)> {
        let ev = self.ambient.eval();
        let obj = induced_structure(&ev, &self.space, name)?.share();
        let incl = HopfMorphism::new(
            obj.clone(),
            self.ambient.clone(),
            self.space.inclusion_matrix(),
        )?;
        Ok((obj, incl))
    }
}

/// A left ideal that is also a two-sided coideal — the "ideal side" of the
/// subalgebra↔ideal correspondence.
#[derive(Debug, Clone)]
pub struct LeftIdealCoideal {
    pub ambient: Hopf,
    pub space: Subspace,
}

impl LeftIdealCoideal {
    pub fn verified(ambient: Hopf, space: Subspace) -> Result<LeftIdealCoideal> {
        if space.ambient_dim() != ambient.dim() || space.field() != ambient.field() {
            return Err(Error::DimensionMismatch(
                "ideal subspace does not live in the ambient carrier".into(),
            ));
        }
        let ev = ambient.eval();
        let d = ambient.dim();
        // Left ideal: a · v stays inside for every basis a of the ambient.
        for a in 0..d {
            let ea = crate::matrix::sparse_unit(a, ambient.field());
            for k in 0..space.dim() {
                let v = space.basis_row_sparse(k);
                let prod = ev.mult_apply(&ea, &v);
                if !space.contains_sparse(&prod) {
                    return Err(Error::NotClosed(format!(
                        "left multiplication by basis {a} leaves the ideal at basis row {k}"
                    )));
                }
            }
        }
        // Counit kills the ideal.
        for k in 0..space.dim() {
            let v = space.basis_row_sparse(k);
            if !ev.counit_apply(&v).is_zero() {
                return Err(Error::NotClosed(format!(
                    "counit does not vanish on ideal basis row {k}"
                )));
            }
        }
        // Two-sided coideal: Δ(v) ∈ I⊗A + A⊗I. That span is exactly the
        // kernel of π⊗π for the quotient projection π: A → A/I, so the test
        // is (π⊗π)(Δv) = 0 — no tensor-square subspace is ever built.
        let split = space.quotient_split();
        let proj_cols = split.proj.columns_sparse();
        let q = split.proj.rows();
        for k in 0..space.dim() {
            let v = space.basis_row_sparse(k);
            let dv = ev.comult_apply(&v);
            let mut acc = BTreeMap::new();
            for (flat, c) in &dv {
                let (x, y) = (flat / d, flat % d);
                let t = crate::matrix::sparse_tensor(&proj_cols[x], &proj_cols[y], q);
                sparse_accumulate(&mut acc, c, &t);
            }
            if !acc.is_empty() {
                return Err(Error::NotClosed(format!(
                    "comultiplication leaves I⊗A + A⊗I at ideal basis row {k}"
                )));
            }
        }
        Ok(LeftIdealCoideal { ambient, space })
    }

    pub fn unchecked(ambient: Hopf, space: Subspace) -> LeftIdealCoideal {
        LeftIdealCoideal { ambient, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Checks a subspace is closed under the ambient Hopf operations.
pub fn verify_closure(ops: &impl HopfOps, space: &Subspace) -> Result<()> {
    if !space.contains_sparse(&ops.unit_vec()) {
        return Err(Error::NotClosed("unit is not in the subspace".into()));
    }
    let k = space.dim();
    for i in 0..k {
        let vi = space.basis_row_sparse(i);
        for j in 0..k {
            let vj = space.basis_row_sparse(j);
            let prod = ops.mult_apply(&vi, &vj);
            if !space.contains_sparse(&prod) {
                return Err(Error::NotClosed(format!(
                    "product of basis rows {i},{j} escapes the subspace"
                )));
            }
        }
        if !space.contains_sparse(&ops.antipode_apply(&vi)) {
            return Err(Error::NotClosed(format!(
                "antipode of basis row {i} escapes the subspace"
            )));
        }
        if tensor_square_coords(space, &ops.comult_apply(&vi)).is_none() {
            return Err(Error::NotClosed(format!(
                "comultiplication of basis row {i} escapes the tensor square"
            )));
        }
    }
    Ok(())
}

/// Coordinates of a flat tensor-square vector in the basis {bⱼ ⊗ b_k} of the
/// subspace's tensor square, or None when it lies outside. Pivot-pair
/// extraction proposes coordinates; an exact residual confirms them.
pub fn tensor_square_coords(space: &Subspace, w: &SparseVec) -> Option<SparseVec> {
    let d = space.ambient_dim();
    let k = space.dim();
    let pivots = space.pivots();
    let lookup: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut coords = Vec::new();
    for (flat, c) in w {
        let (x, y) = (flat / d, flat % d);
        if let (Some(&i), Some(&j)) = (lookup.get(&x), lookup.get(&y)) {
            coords.push((i * k + j, c.clone()));
        }
    }
    // residual = w − Σ c_{ij} bᵢ⊗bⱼ
    let mut acc = BTreeMap::new();
    sparse_accumulate(&mut acc, &Scalar::one(space.field()), w);
    for (flat, c) in &coords {
        let (i, j) = (flat / k, flat % k);
        let t = sparse_tensor(&space.basis_row_sparse(i), &space.basis_row_sparse(j), d);
        sparse_accumulate(&mut acc, &c.neg(), &t);
    }
    if acc.is_empty() {
        coords.sort_unstable_by_key(|(i, _)| *i);
        Some(coords)
    } else {
        None
    }
}

/// Builds the induced Hopf structure on a closed subspace in its canonical
/// basis. Fails with `NotClosed` when the subspace is not actually closed.
pub fn induced_structure(
    ops: &impl HopfOps,
    space: &Subspace,
    name: impl Into<String>,
) -> Result<HopfAlgebra> {
    let k = space.dim();
    let f = space.field();
    if k == 0 {
        return Err(Error::Malformed(
            "cannot induce a Hopf structure on the zero subspace".into(),
        ));
    }
    let mut mult = Matrix::zeros(f, k, k * k);
    let mut comult = Matrix::zeros(f, k * k, k);
    let mut unit = Matrix::zeros(f, k, 1);
    let mut counit = Matrix::zeros(f, 1, k);
    let mut antipode = Matrix::zeros(f, k, k);

    let uc = space
        .coords_sparse(&ops.unit_vec())
        .ok_or_else(|| Error::NotClosed("unit escapes the subspace".into()))?;
    unit.set_col(0, &uc);

    for i in 0..k {
        let vi = space.basis_row_sparse(i);
        counit[(0, i)] = ops.counit_apply(&vi);
        let sc = space
            .coords_sparse(&ops.antipode_apply(&vi))
            .ok_or_else(|| Error::NotClosed(format!("antipode escapes at basis row {i}")))?;
        antipode.set_col(i, &sc);
        let dc = tensor_square_coords(space, &ops.comult_apply(&vi))
            .ok_or_else(|| Error::NotClosed(format!("comultiplication escapes at basis row {i}")))?;
        comult.set_col(i, &dc);
        for j in 0..k {
            let vj = space.basis_row_sparse(j);
            let pc = space
                .coords_sparse(&ops.mult_apply(&vi, &vj))
                .ok_or_else(|| Error::NotClosed(format!("product escapes at basis rows {i},{j}")))?;
            mult.set_col(i * k + j, &pc);
        }
    }
    HopfAlgebra::new(f, k, mult, unit, comult, counit, antipode, name)
}

// ---------------------------------------------------------------------------
// Tensor products, duals, plus parts, subcoalgebras
// ---------------------------------------------------------------------------

/// A binary product in the cocommutative world: the tensor product with its
/// two projections a⊗b ↦ aε(b) and a⊗b ↦ ε(a)b.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub product: Hopf,
    pub p1: HopfMorphism,
    pub p2: HopfMorphism,
}

/// Materializes A ⊗ B with componentwise structure. Intended for moderate
/// dimensions (the multiplication matrix is dim × dim²).
pub fn tensor_product(a: &Hopf, b: &Hopf) -> Result<TensorProduct> {
    let pair = TensorPairEval::new(a, b)?;
    let d = pair.dim();
    let f = pair.field();
    let mut mult = Matrix::zeros(f, d, d * d);
    let mut comult = Matrix::zeros(f, d * d, d);
    let mut unit = Matrix::zeros(f, d, 1);
    let mut counit = Matrix::zeros(f, 1, d);
    let mut antipode = Matrix::zeros(f, d, d);
    unit.set_col(0, &pair.unit_vec());
    for i in 0..d {
        counit[(0, i)] = pair.counit_basis(i);
        antipode.set_col(i, &pair.antipode_basis(i));
        comult.set_col(i, &pair.comult_basis(i));
        for j in 0..d {
            mult.set_col(i * d + j, &pair.mult_pair(i, j));
        }
    }
    let name = format!("{}(x){}", a.name, b.name);
    let product = HopfAlgebra::new(f, d, mult, unit, comult, counit, antipode, name)?.share();
    let db = b.dim();
    let mut m1 = Matrix::zeros(f, a.dim(), d);
    let mut m2 = Matrix::zeros(f, b.dim(), d);
    for i in 0..a.dim() {
        for j in 0..db {
            let col = i * db + j;
            let eb = b.counit[(0, j)].clone();
            if !eb.is_zero() {
                m1[(i, col)] = eb;
            }
            let ea = a.counit[(0, i)].clone();
            if !ea.is_zero() {
                m2[(j, col)] = ea;
            }
        }
    }
    let p1 = HopfMorphism::new(product.clone(), a.clone(), m1)?;
    let p2 = HopfMorphism::new(product.clone(), b.clone(), m2)?;
    Ok(TensorProduct { product, p1, p2 })
}

/// The pairing (f,g): T → A⊗B, t ↦ f(t₁)⊗g(t₂), for f: T→A and g: T→B.
pub fn product_pairing(
    tp: &TensorProduct,
    f: &HopfMorphism,
    g: &HopfMorphism,
) -> Result<HopfMorphism> {
    if *f.source != *g.source {
        return Err(Error::Diagram("pairing legs have different sources".into()));
    }
    if *f.target != *tp.p1.target || *g.target != *tp.p2.target {
        return Err(Error::Diagram("pairing legs do not match the product legs".into()));
    }
    let t = f.source.eval();
    let ds = f.source.dim();
    let db = g.target.dim();
    let fcols = f.map.columns_sparse();
    let gcols = g.map.columns_sparse();
    let mut m = Matrix::zeros(f.map.field(), tp.product.dim(), ds);
    for i in 0..ds {
        let mut acc = BTreeMap::new();
        for (flat, c) in &t.comult_basis(i) {
            let (x, y) = (flat / ds, flat % ds);
            let tens = sparse_tensor(&fcols[x], &gcols[y], db);
            sparse_accumulate(&mut acc, c, &tens);
        }
        m.set_col(i, &sparse_from_map(acc));
    }
    HopfMorphism::new(f.source.clone(), tp.product.clone(), m)
}

/// The augmentation ideal A⁺ = ker ε as a subspace of the carrier.
pub fn plus_part(h: &HopfAlgebra) -> Subspace {
    kernel_space(&h.counit)
}

/// Is the multiplication commutative? (Cocommutativity sits in the axiom
/// battery; commutativity does not, since most of the catalog is not.)
pub fn is_commutative(ops: &impl HopfOps) -> bool {
    let d = ops.dim();
    for i in 0..d {
        for j in 0..i {
            if ops.mult_pair(i, j) != ops.mult_pair(j, i) {
                return false;
            }
        }
    }
    true
}

/// The plus part D⁺ = D ∩ ker ε of a subspace of the carrier.
pub fn plus_part_of(space: &Subspace, h: &HopfAlgebra) -> Subspace {
    // ε restricted to the subspace coordinates, then back to ambient rows.
    let eps_sub = h.counit.mul(&space.inclusion_matrix());
    let ker = kernel_space(&eps_sub);
    let rows = ker.basis().mul(space.basis());
    Subspace::row_space(&rows)
}

/// The vector-space dual with transposed structure maps. The result is a
/// valid Hopf algebra that is commutative iff the input was cocommutative;
/// it is the one construction here allowed to leave the cocommutative world.
pub fn dual_fd(h: &Hopf) -> Result<Hopf> {
    let name = format!("dual({})", h.name);
    Ok(HopfAlgebra::new(
        h.field(),
        h.dim(),
        h.comult.transpose(),
        h.counit.transpose(),
        h.mult.transpose(),
        h.unit.transpose(),
        h.antipode.transpose(),
        name,
    )?
    .share())
}

/// The largest subcoalgebra contained in a subspace `w`: the terminal fixed
/// point of W ↦ {x ∈ W : Δx ∈ W⊗W}. Dimension strictly drops until stable,
/// so at most dim(w) iterations run.
pub fn largest_subcoalgebra_in(h: &HopfAlgebra, w: &Subspace) -> Result<Subspace> {
    if w.ambient_dim() != h.dim() || w.field() != h.field() {
        return Err(Error::DimensionMismatch(
            "subspace does not live in the carrier".into(),
        ));
    }
    let d = h.dim();
    let f = h.field();
    let ev = h.eval();
    let mut current = w.clone();
    loop {
        let k = current.dim();
        if k == 0 {
            return Ok(current);
        }
        // Δx ∈ W⊗W is the same as (π⊗id)Δx = 0 and (id⊗π)Δx = 0 for
        // π: A → A/W, since W⊗A ∩ A⊗W = W⊗W. Stacking both keeps the
        // condition matrix at 2qd × k instead of materializing W⊗W.
        let split = current.quotient_split();
        let proj_cols = split.proj.columns_sparse();
        let q = split.proj.rows();
        let mut cond = Matrix::zeros(f, 2 * q * d, k);
        for j in 0..k {
            let dv = ev.comult_apply(&current.basis_row_sparse(j));
            let mut acc = BTreeMap::new();
            for (flat, c) in &dv {
                let (x, y) = (flat / d, flat % d);
                for (t, ct) in &proj_cols[x] {
                    let v = c.mul(ct);
                    if !v.is_zero() {
                        sparse_accumulate(&mut acc, &v, &sparse_unit(t * d + y, f));
                    }
                }
                for (t, ct) in &proj_cols[y] {
                    let v = c.mul(ct);
                    if !v.is_zero() {
                        sparse_accumulate(&mut acc, &v, &sparse_unit(q * d + x * q + t, f));
                    }
                }
            }
            cond.set_col(j, &sparse_from_map(acc));
        }
        let ker = kernel_space(&cond);
        if ker.dim() == k {
            return Ok(current);
        }
        let rows = ker.basis().mul(current.basis());
        current = Subspace::row_space(&rows);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K[C₂] over ℚ, written out by hand so this module's tests do not depend
    /// on the constructors: basis (e, g), g² = e, Δ(x) = x⊗x, S = id.
    fn c2_by_hand() -> Hopf {
        let f = FieldSpec::Rationals;
        let mult = Matrix::from_int_rows(f, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        let unit = Matrix::from_int_rows(f, &[&[1], &[0]]);
        let comult = Matrix::from_int_rows(f, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]);
        let counit = Matrix::from_int_rows(f, &[&[1, 1]]);
        let antipode = Matrix::identity(f, 2);
        HopfAlgebra::new(f, 2, mult, unit, comult, counit, antipode, "C2")
            .unwrap()
            .share()
    }

    #[test]
    fn hand_built_group_algebra_passes_all_axioms() {
        let h = c2_by_hand();
        let report = check_hopf_axioms(&h).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn broken_antipode_is_reported_with_witness() {
        let good = c2_by_hand();
        let f = good.field();
        // Replace S by the zero map: the antipode identity must fail at e₀.
        let broken = HopfAlgebra::new(
            f,
            2,
            good.mult.clone(),
            good.unit.clone(),
            good.comult.clone(),
            good.counit.clone(),
            Matrix::zeros(f, 2, 2),
            "C2-broken",
        )
        .unwrap();
        let report = check_hopf_axioms(&broken).unwrap();
        assert!(!report.passed());
        let fail = report.check("antipode-left").unwrap();
        assert!(!fail.passed);
        assert_eq!(fail.witness.as_ref().unwrap().indices, vec![0]);
    }

    #[test]
    fn shape_errors_are_errors_not_reports() {
        let f = FieldSpec::Rationals;
        let bad = HopfAlgebra::new(
            f,
            2,
            Matrix::zeros(f, 2, 3), // wrong: should be 2x4
            Matrix::zeros(f, 2, 1),
            Matrix::zeros(f, 4, 2),
            Matrix::zeros(f, 1, 2),
            Matrix::zeros(f, 2, 2),
            "bad",
        );
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn identity_morphism_passes_and_swap_fails() {
        let h = c2_by_hand();
        let id = HopfMorphism::identity(&h);
        assert!(check_morphism(&id).unwrap().passed());
        // The basis swap sends the unit to g: not a morphism.
        let swap = HopfMorphism::new(
            h.clone(),
            h.clone(),
            Matrix::from_int_rows(h.field(), &[&[0, 1], &[1, 0]]),
        )
        .unwrap();
        let report = check_morphism(&swap).unwrap();
        assert!(!report.check("algebra-unit").unwrap().passed);
    }

    #[test]
    fn tensor_square_of_c2_passes_axioms_and_has_working_projections() {
        let h = c2_by_hand();
        let tp = tensor_product(&h, &h).unwrap();
        assert_eq!(tp.product.dim(), 4);
        assert!(check_hopf_axioms(&tp.product).unwrap().passed());
        assert!(check_morphism(&tp.p1).unwrap().passed());
        assert!(check_morphism(&tp.p2).unwrap().passed());
        // Pairing of the two identities is the diagonal, and p1 ∘ (id,id) = id.
        let dg = product_pairing(&tp, &HopfMorphism::identity(&h), &HopfMorphism::identity(&h))
            .unwrap();
        assert!(check_morphism(&dg).unwrap().passed());
        assert!(tp.p1.compose(&dg).unwrap().map.is_identity());
        assert!(tp.p2.compose(&dg).unwrap().map.is_identity());
    }

    #[test]
    fn plus_part_has_codimension_one() {
        let h = c2_by_hand();
        let p = plus_part(&h);
        assert_eq!(p.dim(), 1);
        // The plus part of K[C₂] is spanned by g − e.
        assert!(p.contains_dense(&[
            Scalar::from_int(h.field(), -1),
            Scalar::from_int(h.field(), 1)
        ]));
    }

    #[test]
    fn dual_of_dual_is_identity_on_the_nose() {
        let h = c2_by_hand();
        let dd = dual_fd(&dual_fd(&h).unwrap()).unwrap();
        assert_eq!(dd.mult, h.mult);
        assert_eq!(dd.comult, h.comult);
        assert_eq!(dd.unit, h.unit);
        assert_eq!(dd.counit, h.counit);
        assert_eq!(dd.antipode, h.antipode);
    }

    #[test]
    fn largest_subcoalgebra_of_full_space_is_everything() {
        let h = c2_by_hand();
        let full = Subspace::full(h.field(), 2);
        let sc = largest_subcoalgebra_in(&h, &full).unwrap();
        assert!(sc.is_full());
    }

    #[test]
    fn largest_subcoalgebra_of_difference_line_is_zero() {
        // span{g − e} contains no group-like, so no nonzero subcoalgebra.
        let h = c2_by_hand();
        let w = Subspace::from_dense_rows(
            h.field(),
            2,
            vec![vec![
                Scalar::from_int(h.field(), -1),
                Scalar::from_int(h.field(), 1),
            ]],
        );
        let sc = largest_subcoalgebra_in(&h, &w).unwrap();
        assert!(sc.is_zero());
    }

    #[test]
    fn trivial_subalgebra_is_closed_and_induces_the_base_field() {
        let h = c2_by_hand();
        let triv = HopfSubalgebra::trivial(&h);
        assert!(HopfSubalgebra::verified(h.clone(), triv.space.clone()).is_ok());
        let (obj, incl) = triv.object("K").unwrap();
        assert_eq!(obj.dim(), 1);
        assert!(check_hopf_axioms(&obj).unwrap().passed());
        assert!(check_morphism(&incl).unwrap().passed());
    }

    #[test]
    fn non_closed_subspace_is_rejected() {
        // span{g} is not closed: it misses the unit.
        let h = c2_by_hand();
        let w = Subspace::from_dense_rows(
            h.field(),
            2,
            vec![vec![
                Scalar::zero(h.field()),
                Scalar::one(h.field()),
            ]],
        );
        assert!(matches!(
            HopfSubalgebra::verified(h, w),
            Err(Error::NotClosed(_))
        ));
    }
}
