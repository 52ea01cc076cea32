//! Kernels, cokernels, factorizations, pullbacks, equalizers, h-inverses,
//! the Newman correspondence, normality, and the split short five checker.
//!
//! Every construction both computes and re-verifies: subspaces are checked
//! for closure, induced quotients re-run the axiom battery, and structural
//! identities that hold by theorem (kernel = A·HKer⁺, commuting squares,
//! quotient projections being morphisms) are asserted — a violation is an
//! internal error, never a silent wrong answer.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hopf::{
    check_hopf_axioms, induced_structure, plus_part, plus_part_of, require_morphism,
    verify_closure, Hopf, HopfAlgebra, HopfMorphism, HopfOps, HopfSubalgebra,
    LeftIdealCoideal, TensorPairEval,
};
use crate::matrix::{
    sparse_accumulate, sparse_from_map, sparse_tensor, sparse_unit, Matrix, SparseVec,
};
use crate::subspace::{kernel_of_rows, kernel_space, Echelon, Subspace};

/// Accumulates sparse condition-matrix columns and hands the rows to the
/// echelon-based kernel without ever materializing the dense matrix.
struct ConditionRows {
    /// row index → (column, value) entries.
    rows: BTreeMap<usize, SparseVec>,
}

impl ConditionRows {
    fn new() -> ConditionRows {
        ConditionRows { rows: BTreeMap::new() }
    }

    fn add_column(&mut self, col: usize, entries: &SparseVec) {
        for (row, v) in entries {
            self.rows.entry(*row).or_default().push((col, v.clone()));
        }
    }

    fn kernel(self, field: crate::field::FieldSpec, width: usize) -> Subspace {
        kernel_of_rows(field, width, self.rows.into_values())
    }
}

// ---------------------------------------------------------------------------
// Hopf kernel
// ---------------------------------------------------------------------------

/// The categorical kernel HKer(f) = {a : f(a₁)⊗a₂ = 1⊗a}, returned as a
/// verified Hopf subalgebra of the source. Normality (kernels are normal) is
/// re-checked; its failure would be a library bug.
pub fn hkernel(f: &HopfMorphism) -> Result<HopfSubalgebra> {
    let a = &f.source;
    let da = a.dim();
    let ev = a.eval();
    let fcols = f.map.columns_sparse();
    let unit_b = f.target.unit_sparse();
    let mut cond = ConditionRows::new();
    for i in 0..da {
        // f(a₁)⊗a₂ − 1_B⊗a on basis vector i, flattened into B⊗A.
        let mut acc = BTreeMap::new();
        for (flat, c) in &ev.comult_basis(i) {
            let (x, y) = (flat / da, flat % da);
            for (b, cb) in &fcols[x] {
                let v = c.mul(cb);
                if !v.is_zero() {
                    sparse_accumulate(&mut acc, &v, &vec![(b * da + y, Scalar::one(a.field()))]);
                }
            }
        }
        for (b, cb) in &unit_b {
            sparse_accumulate(&mut acc, &cb.neg(), &vec![(b * da + i, Scalar::one(a.field()))]);
        }
        cond.add_column(i, &sparse_from_map(acc));
    }
    let space = cond.kernel(a.field(), da);
    let sub = HopfSubalgebra::verified(a.clone(), space)?;
    if !is_normal(&sub)? {
        return Err(Error::Internal(
            "Hopf kernel failed the normality cross-check".into(),
        ));
    }
    Ok(sub)
}

// ---------------------------------------------------------------------------
// Ideals and quotients
// ---------------------------------------------------------------------------

/// Closes a set of seed vectors into a two-sided ideal by alternating
/// left- and right-multiplication passes until the dimension stabilizes.
pub fn ideal_closure(
    ambient: &Hopf,
    seeds: impl IntoIterator<Item = SparseVec>,
) -> Subspace {
    let ev = ambient.eval();
    let d = ambient.dim();
    let mut ech = Echelon::new(ambient.field(), d);
    for s in seeds {
        ech.insert_sparse(&s);
    }
    loop {
        let before = ech.rank();
        let snapshot = ech.rows_sparse();
        for v in &snapshot {
            for a in 0..d {
                let ea = sparse_unit(a, ambient.field());
                ech.insert_sparse(&ev.mult_apply(&ea, v));
                ech.insert_sparse(&ev.mult_apply(v, &ea));
            }
        }
        if ech.rank() == before {
            return ech.into_subspace();
        }
    }
}

/// Checks a subspace is a Hopf ideal: a two-sided ideal, two-sided coideal,
/// killed by ε and stable under S.
pub fn verify_hopf_ideal(ambient: &Hopf, space: &Subspace) -> Result<()> {
    let ev = ambient.eval();
    let d = ambient.dim();
    for k in 0..space.dim() {
        let v = space.basis_row_sparse(k);
        if !ev.counit_apply(&v).is_zero() {
            return Err(Error::NotClosed(format!(
                "counit does not vanish on ideal basis row {k}"
            )));
        }
        if !space.contains_sparse(&ev.antipode_apply(&v)) {
            return Err(Error::NotClosed(format!(
                "antipode leaves the ideal at basis row {k}"
            )));
        }
        for a in 0..d {
            let ea = sparse_unit(a, ambient.field());
            if !space.contains_sparse(&ev.mult_apply(&ea, &v))
                || !space.contains_sparse(&ev.mult_apply(&v, &ea))
            {
                return Err(Error::NotClosed(format!(
                    "multiplication by basis {a} leaves the ideal at basis row {k}"
                )));
            }
        }
    }
    // Coideal: (π⊗π)Δv = 0 for the quotient projection π.
    let split = space.quotient_split();
    let proj_cols = split.proj.columns_sparse();
    let q = split.proj.rows();
    for k in 0..space.dim() {
        let dv = ev.comult_apply(&space.basis_row_sparse(k));
        let mut acc = BTreeMap::new();
        for (flat, c) in &dv {
            let (x, y) = (flat / d, flat % d);
            let t = sparse_tensor(&proj_cols[x], &proj_cols[y], q);
            sparse_accumulate(&mut acc, c, &t);
        }
        if !acc.is_empty() {
            return Err(Error::NotClosed(format!(
                "comultiplication leaves I⊗A + A⊗I at ideal basis row {k}"
            )));
        }
    }
    Ok(())
}

/// Quotients the ambient by a verified Hopf ideal: induces all five structure
/// maps through the canonical split, re-runs the axiom battery, and returns
/// the projection (verified to be a morphism whose linear kernel is exactly
/// the ideal) together with the linear section.
pub fn quotient_by_ideal(
    ambient: &Hopf,
    ideal: &Subspace,
    name: impl Into<String>,
) -> Result<(Hopf, HopfMorphism, Matrix)> {
    verify_hopf_ideal(ambient, ideal)?;
    let ev = ambient.eval();
    let d = ambient.dim();
    let f = ambient.field();
    let split = ideal.quotient_split();
    let proj_cols = split.proj.columns_sparse();
    let q = split.proj.rows();
    let reps = &split.coset_cols;
    let apply_proj = |v: &SparseVec| -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            sparse_accumulate(&mut acc, c, &proj_cols[*i]);
        }
        sparse_from_map(acc)
    };

    let mut mult = Matrix::zeros(f, q, q * q);
    let mut comult = Matrix::zeros(f, q * q, q);
    let mut unit = Matrix::zeros(f, q, 1);
    let mut counit = Matrix::zeros(f, 1, q);
    let mut antipode = Matrix::zeros(f, q, q);
    unit.set_col(0, &apply_proj(&ambient.unit_sparse()));
    for i in 0..q {
        let rep = reps[i];
        counit[(0, i)] = ev.counit_basis(rep);
        antipode.set_col(i, &apply_proj(&ev.antipode_basis(rep)));
        let mut acc = BTreeMap::new();
        for (flat, c) in &ev.comult_basis(rep) {
            let (x, y) = (flat / d, flat % d);
            let t = sparse_tensor(&proj_cols[x], &proj_cols[y], q);
            sparse_accumulate(&mut acc, c, &t);
        }
        comult.set_col(i, &sparse_from_map(acc));
        for j in 0..q {
            mult.set_col(i * q + j, &apply_proj(&ev.mult_pair(reps[i], reps[j])));
        }
    }
    let quotient = HopfAlgebra::new(f, q, mult, unit, comult, counit, antipode, name)?;
    let report = check_hopf_axioms(&quotient)?;
    if !report.passed() {
        return Err(Error::AxiomsFailed {
            subject: quotient.name.clone(),
            report,
        });
    }
    let quotient = quotient.share();
    let proj = HopfMorphism::new(ambient.clone(), quotient.clone(), split.proj.clone())?;
    require_morphism(&proj, "quotient projection")?;
    if kernel_space(&proj.map) != *ideal {
        return Err(Error::Internal(
            "quotient projection kernel is not the ideal".into(),
        ));
    }
    Ok((quotient, proj, split.section))
}

/// The cokernel q: B → B/(B·f(A)⁺·B).
pub struct CokernelResult {
    /// The Hopf ideal B·f(A)⁺·B.
    pub ideal: Subspace,
    pub quotient: Hopf,
    pub proj: HopfMorphism,
    /// A linear (not Hopf) section of the projection, picking coset
    /// representatives.
    pub section: Matrix,
}

pub fn cokernel(f: &HopfMorphism) -> Result<CokernelResult> {
    let b = &f.target;
    let fcols = f.map.columns_sparse();
    let aplus = plus_part(&f.source);
    let seeds = (0..aplus.dim()).map(|k| {
        let mut acc = BTreeMap::new();
        for (i, c) in aplus.basis_row_sparse(k) {
            sparse_accumulate(&mut acc, &c, &fcols[i]);
        }
        sparse_from_map(acc)
    });
    let ideal = ideal_closure(b, seeds);
    let (quotient, proj, section) =
        quotient_by_ideal(b, &ideal, format!("{}/im⁺", b.name))?;
    // q·f factors through K: it must equal the trivial morphism.
    let triv = HopfMorphism::trivial(&f.source, &quotient)?;
    if proj.compose(f)?.map != triv.map {
        return Err(Error::Internal(
            "cokernel projection does not kill the image".into(),
        ));
    }
    Ok(CokernelResult {
        ideal,
        quotient,
        proj,
        section,
    })
}

// ---------------------------------------------------------------------------
// Image factorization
// ---------------------------------------------------------------------------

pub struct FactorizationResult {
    pub hker: HopfSubalgebra,
    /// A·HKer(f)⁺, which equals the linear kernel of f.
    pub ideal: Subspace,
    pub image: Hopf,
    pub epi_part: HopfMorphism,
    pub mono_part: HopfMorphism,
}

/// The regular epi–mono factorization: quotient by the kernel ideal, then
/// the induced injection. Asserts the identity ker(f) = A·HKer(f)⁺ and
/// dim(image) = rank(f).
pub fn image_factorization(f: &HopfMorphism) -> Result<FactorizationResult> {
    let a = &f.source;
    let hker = hkernel(f)?;
    let hkplus = plus_part_of(&hker.space, a);
    let seeds = (0..hkplus.dim()).map(|k| hkplus.basis_row_sparse(k));
    let ideal = ideal_closure(a, seeds);
    if ideal != kernel_space(&f.map) {
        return Err(Error::Internal(
            "A·HKer(f)⁺ differs from the linear kernel of f".into(),
        ));
    }
    let (image, epi_part, section) =
        quotient_by_ideal(a, &ideal, format!("im({}→{})", a.name, f.target.name))?;
    let mono_part = HopfMorphism::new(image.clone(), f.target.clone(), f.map.mul(&section))?;
    require_morphism(&mono_part, "mono part of the factorization")?;
    if mono_part.compose(&epi_part)?.map != f.map {
        return Err(Error::Internal("factorization does not recompose".into()));
    }
    if !mono_part.is_injective() || !epi_part.is_surjective() {
        return Err(Error::Internal(
            "factorization parts have the wrong rank".into(),
        ));
    }
    if image.dim() != f.rank() {
        return Err(Error::Internal(
            "image dimension differs from the matrix rank".into(),
        ));
    }
    Ok(FactorizationResult {
        hker,
        ideal,
        image,
        epi_part,
        mono_part,
    })
}

// ---------------------------------------------------------------------------
// Pullbacks
// ---------------------------------------------------------------------------

pub struct Pullback {
    pub object: Hopf,
    /// The pullback carrier as a subspace of the flattened A⊗C.
    pub space: Subspace,
    pub p1: HopfMorphism,
    pub p2: HopfMorphism,
}

/// Just the carrier of A ×_B C inside the flattened A⊗C: the kernel of the
/// cotensor condition a₁⊗f(a₂)⊗c − a⊗g(c₁)⊗c₂, cut out by lazily generated
/// rows (never a dense dim_A·dim_B·dim_C condition matrix).
pub fn pullback_space(f: &HopfMorphism, g: &HopfMorphism) -> Result<Subspace> {
    if *f.target != *g.target {
        return Err(Error::Diagram("pullback legs have different targets".into()));
    }
    let a = &f.source;
    let c = &g.source;
    let (da, db, dc) = (a.dim(), f.target.dim(), c.dim());
    let field = a.field();
    let aev = a.eval();
    let cev = c.eval();
    let fcols = f.map.columns_sparse();
    let gcols = g.map.columns_sparse();
    let mut cond = ConditionRows::new();
    for i in 0..da {
        let da_pairs = aev.comult_basis(i);
        for j in 0..dc {
            let mut acc = BTreeMap::new();
            // a₁ ⊗ f(a₂) ⊗ c
            for (flat, cf) in &da_pairs {
                let (x, y) = (flat / da, flat % da);
                for (b, cb) in &fcols[y] {
                    let v = cf.mul(cb);
                    if !v.is_zero() {
                        sparse_accumulate(
                            &mut acc,
                            &v,
                            &vec![((x * db + b) * dc + j, Scalar::one(field))],
                        );
                    }
                }
            }
            // − a ⊗ g(c₁) ⊗ c₂
            for (flat, cf) in &cev.comult_basis(j) {
                let (y, z) = (flat / dc, flat % dc);
                for (b, cb) in &gcols[y] {
                    let v = cf.mul(cb).neg();
                    if !v.is_zero() {
                        sparse_accumulate(
                            &mut acc,
                            &v,
                            &vec![((i * db + b) * dc + z, Scalar::one(field))],
                        );
                    }
                }
            }
            cond.add_column(i * dc + j, &sparse_from_map(acc));
        }
    }
    Ok(cond.kernel(field, da * dc))
}

/// A ×_B C with its induced Hopf structure and verified projections; the
/// carrier comes from `pullback_space` and is closure-verified against the
/// virtual tensor-square structure before materializing.
pub fn pullback(f: &HopfMorphism, g: &HopfMorphism) -> Result<Pullback> {
    let space = pullback_space(f, g)?;
    let a = &f.source;
    let c = &g.source;
    let (da, dc) = (a.dim(), c.dim());
    let field = a.field();
    let aev = a.eval();
    let cev = c.eval();
    let pair = TensorPairEval::new(a, c)?;
    verify_closure(&pair, &space)?;
    let object = induced_structure(
        &pair,
        &space,
        format!("{}×_{}{}", a.name, f.target.name, c.name),
    )?
    .share();

    let k = space.dim();
    let mut m1 = Matrix::zeros(field, da, k);
    let mut m2 = Matrix::zeros(field, dc, k);
    for col in 0..k {
        let mut acc1 = BTreeMap::new();
        let mut acc2 = BTreeMap::new();
        for (flat, v) in space.basis_row_sparse(col) {
            let (i, j) = (flat / dc, flat % dc);
            let e_c = cev.counit_basis(j);
            if !e_c.is_zero() {
                sparse_accumulate(&mut acc1, &v.mul(&e_c), &sparse_unit(i, field));
            }
            let e_a = aev.counit_basis(i);
            if !e_a.is_zero() {
                sparse_accumulate(&mut acc2, &v.mul(&e_a), &sparse_unit(j, field));
            }
        }
        m1.set_col(col, &sparse_from_map(acc1));
        m2.set_col(col, &sparse_from_map(acc2));
    }
    let p1 = HopfMorphism::new(object.clone(), a.clone(), m1)?;
    let p2 = HopfMorphism::new(object.clone(), c.clone(), m2)?;
    require_morphism(&p1, "pullback projection p1")?;
    require_morphism(&p2, "pullback projection p2")?;
    if f.compose(&p1)?.map != g.compose(&p2)?.map {
        return Err(Error::Internal("pullback square does not commute".into()));
    }
    Ok(Pullback {
        object,
        space,
        p1,
        p2,
    })
}

impl Pullback {
    /// The universal pairing (u,v): T → A×_B C for legs with f∘u = g∘v,
    /// t ↦ u(t₁)⊗v(t₂) corestricted to the pullback carrier.
    pub fn pair(&self, u: &HopfMorphism, v: &HopfMorphism) -> Result<HopfMorphism> {
        if *u.source != *v.source {
            return Err(Error::Diagram("pairing legs have different sources".into()));
        }
        if *u.target != *self.p1.target || *v.target != *self.p2.target {
            return Err(Error::Diagram(
                "pairing legs do not land in the pullback feet".into(),
            ));
        }
        let t = u.source.eval();
        let dt = u.source.dim();
        let dc = self.p2.target.dim();
        let ucols = u.map.columns_sparse();
        let vcols = v.map.columns_sparse();
        let mut m = Matrix::zeros(u.map.field(), self.object.dim(), dt);
        for i in 0..dt {
            let mut acc = BTreeMap::new();
            for (flat, c) in &t.comult_basis(i) {
                let (x, y) = (flat / dt, flat % dt);
                let tens = sparse_tensor(&ucols[x], &vcols[y], dc);
                sparse_accumulate(&mut acc, c, &tens);
            }
            let w = sparse_from_map(acc);
            let coords = self.space.coords_sparse(&w).ok_or_else(|| {
                Error::Diagram("pairing does not land in the pullback carrier".into())
            })?;
            m.set_col(i, &coords);
        }
        let h = HopfMorphism::new(u.source.clone(), self.object.clone(), m)?;
        require_morphism(&h, "pullback pairing")?;
        if self.p1.compose(&h)?.map != u.map || self.p2.compose(&h)?.map != v.map {
            return Err(Error::Internal(
                "pullback pairing does not reproduce its legs".into(),
            ));
        }
        Ok(h)
    }
}

// ---------------------------------------------------------------------------
// Equalizers
// ---------------------------------------------------------------------------

/// The equalizer of f, g: A ⇉ B: the largest subcoalgebra of the linear
/// equalizer, which is then automatically a Hopf subalgebra (and verified as
/// one).
pub fn equalizer(f: &HopfMorphism, g: &HopfMorphism) -> Result<HopfSubalgebra> {
    if *f.source != *g.source || *f.target != *g.target {
        return Err(Error::Diagram("equalizer needs a parallel pair".into()));
    }
    let w = kernel_space(&f.map.sub(&g.map));
    let d = crate::hopf::largest_subcoalgebra_in(&f.source, &w)?;
    HopfSubalgebra::verified(f.source.clone(), d)
}

// ---------------------------------------------------------------------------
// h-inverse and direct image
// ---------------------------------------------------------------------------

/// The h-inverse p⁻¹(C) = {x ∈ A : (p⊗id)Δ(x) − 1⊗x ∈ C⁺⊗A}. Membership in
/// C⁺⊗A is tested through the projection B → B/C⁺ on the left leg.
pub fn h_inverse(p: &HopfMorphism, c: &HopfSubalgebra) -> Result<HopfSubalgebra> {
    if *c.ambient != *p.target {
        return Err(Error::Diagram(
            "h-inverse subalgebra does not live in the target".into(),
        ));
    }
    let a = &p.source;
    let da = a.dim();
    let field = a.field();
    let aev = a.eval();
    let pcols = p.map.columns_sparse();
    let cplus = plus_part_of(&c.space, &p.target);
    let split = cplus.quotient_split();
    let proj_cols = split.proj.columns_sparse();
    let unit_b = p.target.unit_sparse();
    let mut cond = ConditionRows::new();
    for i in 0..da {
        let mut acc = BTreeMap::new();
        for (flat, cf) in &aev.comult_basis(i) {
            let (x, y) = (flat / da, flat % da);
            for (b, cb) in &pcols[x] {
                for (t, ct) in &proj_cols[*b] {
                    let v = cf.mul(cb).mul(ct);
                    if !v.is_zero() {
                        sparse_accumulate(
                            &mut acc,
                            &v,
                            &vec![(t * da + y, Scalar::one(field))],
                        );
                    }
                }
            }
        }
        for (b, cb) in &unit_b {
            for (t, ct) in &proj_cols[*b] {
                let v = cb.mul(ct).neg();
                sparse_accumulate(&mut acc, &v, &vec![(t * da + i, Scalar::one(field))]);
            }
        }
        cond.add_column(i, &sparse_from_map(acc));
    }
    let space = cond.kernel(field, da);
    HopfSubalgebra::verified(a.clone(), space)
}

/// The direct image p(D): the span of the images of D's basis, verified to
/// be a Hopf subalgebra of the target.
pub fn direct_image(p: &HopfMorphism, d: &HopfSubalgebra) -> Result<HopfSubalgebra> {
    if *d.ambient != *p.source {
        return Err(Error::Diagram(
            "direct-image subalgebra does not live in the source".into(),
        ));
    }
    let pcols = p.map.columns_sparse();
    let rows = (0..d.space.dim()).map(|k| {
        let mut acc = BTreeMap::new();
        for (i, c) in d.space.basis_row_sparse(k) {
            sparse_accumulate(&mut acc, &c, &pcols[i]);
        }
        sparse_from_map(acc)
    });
    let space = Subspace::from_sparse_rows(p.map.field(), p.target.dim(), rows);
    HopfSubalgebra::verified(p.target.clone(), space)
}

// ---------------------------------------------------------------------------
// Newman correspondence
// ---------------------------------------------------------------------------

/// Φ_A(D) = A·D⁺, the left ideal generated by the augmentation ideal of D.
/// One multiplication pass suffices — left multiples absorb — and the result
/// is verified as a left ideal two-sided coideal.
pub fn newman_phi(d: &HopfSubalgebra) -> Result<LeftIdealCoideal> {
    let a = &d.ambient;
    let ev = a.eval();
    let da = a.dim();
    let dplus = plus_part_of(&d.space, a);
    let mut ech = Echelon::new(a.field(), da);
    for k in 0..dplus.dim() {
        let x = dplus.basis_row_sparse(k);
        for i in 0..da {
            ech.insert_sparse(&ev.mult_apply(&sparse_unit(i, a.field()), &x));
        }
    }
    LeftIdealCoideal::verified(a.clone(), ech.into_subspace())
}

/// Ψ_A(I) = {x : (id⊗π)Δ(x) = x⊗π(1)} for the linear quotient projection
/// π: A → A/I.
pub fn newman_psi(i: &LeftIdealCoideal) -> Result<HopfSubalgebra> {
    let a = &i.ambient;
    let da = a.dim();
    let field = a.field();
    let ev = a.eval();
    let split = i.space.quotient_split();
    let proj_cols = split.proj.columns_sparse();
    let pi_one: SparseVec = {
        let mut acc = BTreeMap::new();
        for (b, cb) in &a.unit_sparse() {
            sparse_accumulate(&mut acc, cb, &proj_cols[*b]);
        }
        sparse_from_map(acc)
    };
    let q = split.proj.rows();
    let mut cond = ConditionRows::new();
    for x in 0..da {
        let mut acc = BTreeMap::new();
        for (flat, cf) in &ev.comult_basis(x) {
            let (a1, a2) = (flat / da, flat % da);
            for (t, ct) in &proj_cols[a2] {
                let v = cf.mul(ct);
                if !v.is_zero() {
                    sparse_accumulate(&mut acc, &v, &vec![(a1 * q + t, Scalar::one(field))]);
                }
            }
        }
        for (t, ct) in &pi_one {
            sparse_accumulate(&mut acc, &ct.neg(), &vec![(x * q + t, Scalar::one(field))]);
        }
        cond.add_column(x, &sparse_from_map(acc));
    }
    let space = cond.kernel(field, da);
    HopfSubalgebra::verified(a.clone(), space)
}

// ---------------------------------------------------------------------------
// Normality
// ---------------------------------------------------------------------------

/// Is the subalgebra stable under the adjoint action a₁·x·S(a₂)? The verdict
/// is cross-checked against the ideal criterion — Φ(D) being a full Hopf
/// ideal — and any disagreement between the two is reported as a bug.
pub fn is_normal(d: &HopfSubalgebra) -> Result<bool> {
    let a = &d.ambient;
    let ev = a.eval();
    let da = a.dim();
    let mut adjoint_stable = true;
    'outer: for i in 0..da {
        let pairs = ev.comult_basis(i);
        for k in 0..d.space.dim() {
            let x = d.space.basis_row_sparse(k);
            let mut acc = BTreeMap::new();
            for (flat, c) in &pairs {
                let (a1, a2) = (flat / da, flat % da);
                let left = ev.mult_apply(&sparse_unit(a1, a.field()), &x);
                let full = ev.mult_apply(&left, &ev.antipode_basis(a2));
                sparse_accumulate(&mut acc, c, &full);
            }
            if !d.space.contains_sparse(&sparse_from_map(acc)) {
                adjoint_stable = false;
                break 'outer;
            }
        }
    }
    let ideal_criterion = phi_is_hopf_ideal(d)?;
    if adjoint_stable != ideal_criterion {
        return Err(Error::Internal(
            "adjoint-stability and Φ-ideal normality criteria disagree".into(),
        ));
    }
    Ok(adjoint_stable)
}

/// The ideal-side normality criterion: Φ(D) = A·D⁺ is also a right ideal and
/// S-stable (hence a Hopf ideal).
pub fn phi_is_hopf_ideal(d: &HopfSubalgebra) -> Result<bool> {
    let phi = newman_phi(d)?;
    let a = &d.ambient;
    let ev = a.eval();
    let da = a.dim();
    for k in 0..phi.space.dim() {
        let v = phi.space.basis_row_sparse(k);
        if !phi.space.contains_sparse(&ev.antipode_apply(&v)) {
            return Ok(false);
        }
        for i in 0..da {
            if !phi
                .space
                .contains_sparse(&ev.mult_apply(&v, &sparse_unit(i, a.field())))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Takeuchi abelian-object criterion: X is abelian exactly when the
/// diagonal Δ: X → X⊗X is a normal monomorphism. Normality of the image is
/// decided through the ideal criterion (Φ of the image is a Hopf ideal of
/// X⊗X).
pub fn diagonal_normal(x: &Hopf) -> Result<bool> {
    let tp = crate::hopf::tensor_product(x, x)?;
    let diag = HopfMorphism::new(x.clone(), tp.product.clone(), x.comult.clone())?;
    require_morphism(&diag, "diagonal embedding")?;
    if !diag.is_injective() {
        return Err(Error::Internal("diagonal is not injective".into()));
    }
    let sub = HopfSubalgebra::verified(tp.product.clone(), diag.image())?;
    phi_is_hopf_ideal(&sub)
}

// ---------------------------------------------------------------------------
// Extensions and the split short five lemma
// ---------------------------------------------------------------------------

/// A (split) extension X ↣ A ↠ B: the inclusion is the categorical kernel of
/// the epi, and the optional section satisfies epi∘section = id.
#[derive(Debug, Clone)]
pub struct Extension {
    pub kernel_inclusion: HopfMorphism,
    pub epi: HopfMorphism,
    pub section: Option<HopfMorphism>,
}

impl Extension {
    pub fn verified(
        kernel_inclusion: HopfMorphism,
        epi: HopfMorphism,
        section: Option<HopfMorphism>,
    ) -> Result<Extension> {
        if *kernel_inclusion.target != *epi.source {
            return Err(Error::Diagram(
                "kernel inclusion does not land in the extension middle".into(),
            ));
        }
        require_morphism(&kernel_inclusion, "extension kernel inclusion")?;
        require_morphism(&epi, "extension epimorphism")?;
        if !epi.is_surjective() {
            return Err(Error::NotSurjective("extension epimorphism".into()));
        }
        if !kernel_inclusion.is_injective() {
            return Err(Error::Diagram("kernel inclusion is not injective".into()));
        }
        let hker = hkernel(&epi)?;
        if kernel_inclusion.image() != hker.space {
            return Err(Error::Diagram(
                "kernel inclusion image differs from the Hopf kernel of the epi".into(),
            ));
        }
        if let Some(s) = &section {
            if *s.source != *epi.target || *s.target != *epi.source {
                return Err(Error::Diagram("section endpoints are wrong".into()));
            }
            require_morphism(s, "extension section")?;
            if !epi.compose(s)?.map.is_identity() {
                return Err(Error::Diagram("section is not a section of the epi".into()));
            }
        }
        Ok(Extension {
            kernel_inclusion,
            epi,
            section,
        })
    }

    pub fn kernel_object(&self) -> &Hopf {
        &self.kernel_inclusion.source
    }

    pub fn middle(&self) -> &Hopf {
        &self.epi.source
    }

    pub fn base(&self) -> &Hopf {
        &self.epi.target
    }
}

/// Split short five: given two split extensions and vertical maps
/// (κ on kernels, α in the middle, β on bases) making everything commute
/// (including the sections), reports whether α is an isomorphism. The
/// protomodularity property says it must be whenever κ and β are.
pub fn check_split_short_five(
    top: &Extension,
    bottom: &Extension,
    kappa: &HopfMorphism,
    alpha: &HopfMorphism,
    beta: &HopfMorphism,
) -> Result<bool> {
    let (ts, bs) = (&top.section, &bottom.section);
    let (Some(ts), Some(bs)) = (ts, bs) else {
        return Err(Error::Malformed(
            "split short five needs sections on both extensions".into(),
        ));
    };
    if *kappa.source != **top.kernel_object() || *kappa.target != **bottom.kernel_object() {
        return Err(Error::Diagram("κ endpoints are wrong".into()));
    }
    if *alpha.source != **top.middle() || *alpha.target != **bottom.middle() {
        return Err(Error::Diagram("α endpoints are wrong".into()));
    }
    if *beta.source != **top.base() || *beta.target != **bottom.base() {
        return Err(Error::Diagram("β endpoints are wrong".into()));
    }
    for m in [kappa, alpha, beta] {
        require_morphism(m, "split-short-five vertical map")?;
    }
    if alpha.compose(&top.kernel_inclusion)?.map != bottom.kernel_inclusion.compose(kappa)?.map {
        return Err(Error::Diagram("kernel square does not commute".into()));
    }
    if bottom.epi.compose(alpha)?.map != beta.compose(&top.epi)?.map {
        return Err(Error::Diagram("base square does not commute".into()));
    }
    if alpha.compose(ts)?.map != bs.compose(beta)?.map {
        return Err(Error::Diagram("section square does not commute".into()));
    }
    Ok(alpha.is_isomorphism())
}

// ---------------------------------------------------------------------------
// Subgroup-span helpers used across the test batteries
// ---------------------------------------------------------------------------

/// The span of a set of group-element basis vectors as a subspace.
pub fn span_of_basis_elements(
    field: crate::field::FieldSpec,
    ambient_dim: usize,
    elems: &[usize],
) -> Subspace {
    Subspace::from_sparse_rows(
        field,
        ambient_dim,
        elems.iter().map(|&i| sparse_unit(i, field)),
    )
}

/// K[H] ⊆ K[G] for a subgroup given by element indices, verified.
pub fn subgroup_subalgebra(ambient: &Hopf, elems: &[usize]) -> Result<HopfSubalgebra> {
    let space = span_of_basis_elements(ambient.field(), ambient.dim(), elems);
    HopfSubalgebra::verified(ambient.clone(), space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        group_algebra, hopf_from_group_hom, isomorphic_to_group_algebra,
    };
    use crate::field::FieldSpec;
    use crate::groups;

    fn sign_setup() -> (Hopf, Hopf, HopfMorphism) {
        let s3 = groups::dihedral(3);
        let c2 = groups::cyclic(2);
        hopf_from_group_hom(FieldSpec::Rationals, &s3, &c2, &[0, 0, 0, 1, 1, 1]).unwrap()
    }

    #[test]
    fn hkernel_of_identity_is_trivial() {
        let (ks3, _, _) = sign_setup();
        let hk = hkernel(&HopfMorphism::identity(&ks3)).unwrap();
        assert!(hk.is_trivial());
    }

    #[test]
    fn hkernel_of_sign_is_the_alternating_span() {
        let (ks3, _, sign) = sign_setup();
        let hk = hkernel(&sign).unwrap();
        assert_eq!(hk.dim(), 3);
        let a3 = span_of_basis_elements(FieldSpec::Rationals, 6, &[0, 1, 2]);
        assert_eq!(hk.space, a3);
        // Kernel of the trivial morphism is everything.
        let k = group_algebra(FieldSpec::Rationals, &groups::cyclic(1)).unwrap();
        let triv = HopfMorphism::trivial(&ks3, &k).unwrap();
        assert!(hkernel(&triv).unwrap().space.is_full());
    }

    #[test]
    fn cokernel_of_alternating_inclusion_is_c2() {
        let s3 = groups::dihedral(3);
        let f = FieldSpec::Rationals;
        let ks3 = group_algebra(f, &s3).unwrap();
        let sub = subgroup_subalgebra(&ks3, &[0, 1, 2]).unwrap();
        let (a3_obj, incl) = sub.object("K[A3]").unwrap();
        let _ = a3_obj;
        let cok = cokernel(&incl).unwrap();
        assert_eq!(cok.quotient.dim(), 2);
        assert!(isomorphic_to_group_algebra(&cok.quotient, &groups::cyclic(2)).unwrap());
        assert_eq!(cok.ideal.dim(), 4);
    }

    #[test]
    fn cokernel_degenerate_cases() {
        let (ks3, _, _) = sign_setup();
        // Identity: cokernel is the base field.
        let cok = cokernel(&HopfMorphism::identity(&ks3)).unwrap();
        assert_eq!(cok.quotient.dim(), 1);
        // Unit morphism K → A: cokernel is A itself.
        let k = group_algebra(FieldSpec::Rationals, &groups::cyclic(1)).unwrap();
        let unit = HopfMorphism::trivial(&k, &ks3).unwrap();
        let cok = cokernel(&unit).unwrap();
        assert_eq!(cok.quotient.dim(), 6);
        assert!(cok.proj.is_isomorphism());
    }

    #[test]
    fn factorization_of_sign_has_rank_two_intermediate() {
        let (_, _, sign) = sign_setup();
        let fac = image_factorization(&sign).unwrap();
        assert_eq!(fac.image.dim(), 2);
        assert_eq!(fac.ideal.dim(), 4);
        assert!(fac.epi_part.is_surjective());
        assert!(fac.mono_part.is_injective());
    }

    #[test]
    fn factorization_of_mono_and_zero() {
        let (ks3, kc2, _) = sign_setup();
        let id = HopfMorphism::identity(&ks3);
        let fac = image_factorization(&id).unwrap();
        assert!(fac.epi_part.is_isomorphism());
        assert_eq!(fac.image.dim(), 6);
        let triv = HopfMorphism::trivial(&ks3, &kc2).unwrap();
        let fac = image_factorization(&triv).unwrap();
        assert_eq!(fac.image.dim(), 1);
        assert_eq!(fac.hker.dim(), 6);
    }

    #[test]
    fn pullback_of_sign_along_sign_is_the_order_18_fibre_product() {
        let (_, _, sign) = sign_setup();
        let pb = pullback(&sign, &sign).unwrap();
        assert_eq!(pb.object.dim(), 18);
        // Oracle: the subgroup of S₃×S₃ of pairs with equal sign.
        let s3 = groups::dihedral(3);
        let prod = groups::direct_product(&s3, &s3);
        let elems: Vec<usize> = (0..36)
            .filter(|&x| {
                let (a, b) = (x / 6, x % 6);
                (a >= 3) == (b >= 3)
            })
            .collect();
        assert!(groups::is_subgroup(&prod, &elems));
        let table = groups::subgroup_table(&prod, &elems, "fibre").unwrap();
        assert!(isomorphic_to_group_algebra(&pb.object, &table).unwrap());
    }

    #[test]
    fn pullback_along_identity_recovers_the_source() {
        let (_, kc2, sign) = sign_setup();
        let pb = pullback(&sign, &HopfMorphism::identity(&kc2)).unwrap();
        assert_eq!(pb.object.dim(), 6);
        assert!(pb.p1.is_isomorphism());
    }

    #[test]
    fn pullback_over_the_zero_object_is_the_tensor_product() {
        let f = FieldSpec::Rationals;
        let kc2 = group_algebra(f, &groups::cyclic(2)).unwrap();
        let kc3 = group_algebra(f, &groups::cyclic(3)).unwrap();
        let k = group_algebra(f, &groups::cyclic(1)).unwrap();
        let ta = HopfMorphism::trivial(&kc2, &k).unwrap();
        let tb = HopfMorphism::trivial(&kc3, &k).unwrap();
        let pb = pullback(&ta, &tb).unwrap();
        assert_eq!(pb.object.dim(), 6);
        assert!(pb.space.is_full());
    }

    #[test]
    fn pullback_pairing_satisfies_the_universal_property() {
        let (ks3, _, sign) = sign_setup();
        let pb = pullback(&sign, &sign).unwrap();
        let id = HopfMorphism::identity(&ks3);
        let diag = pb.pair(&id, &id).unwrap();
        assert!(pb.p1.compose(&diag).unwrap().map.is_identity());
        assert!(pb.p2.compose(&diag).unwrap().map.is_identity());
        // Legs that do not equalize are rejected.
        let k = group_algebra(FieldSpec::Rationals, &groups::cyclic(1)).unwrap();
        let bad = HopfMorphism::trivial(&k, &ks3).unwrap();
        let good = HopfMorphism::trivial(&k, &ks3).unwrap();
        // f∘bad = trivial = g∘good at K level — this pairing exists; build a
        // genuinely non-equalizing pair instead from C₂ → K[S₃] vs itself
        // composed differently is equal too; use the unit vs a reflection hom.
        let c2 = groups::cyclic(2);
        let s3 = groups::dihedral(3);
        let (kc2b, _, refl) =
            hopf_from_group_hom(FieldSpec::Rationals, &c2, &s3, &[0, 3]).unwrap();
        let tr = HopfMorphism::trivial(&kc2b, &ks3).unwrap();
        assert!(pb.pair(&refl, &tr).is_err());
        let _ = (bad, good);
    }

    #[test]
    fn equalizer_cases() {
        let (ks3, kc2, sign) = sign_setup();
        // f = g: the whole source.
        assert!(equalizer(&sign, &sign).unwrap().space.is_full());
        // sign vs trivial: the alternating subalgebra.
        let triv = HopfMorphism::trivial(&ks3, &kc2).unwrap();
        let eq = equalizer(&sign, &triv).unwrap();
        assert_eq!(eq.dim(), 3);
        assert_eq!(
            eq.space,
            span_of_basis_elements(FieldSpec::Rationals, 6, &[0, 1, 2])
        );
        // Two projections of a tensor square: the diagonal.
        let f = FieldSpec::Rationals;
        let kc2q = group_algebra(f, &groups::cyclic(2)).unwrap();
        let tp = crate::hopf::tensor_product(&kc2q, &kc2q).unwrap();
        let eq = equalizer(&tp.p1, &tp.p2).unwrap();
        assert_eq!(eq.dim(), 2);
    }

    #[test]
    fn h_inverse_cases() {
        let (ks3, kc2, sign) = sign_setup();
        // Whole target pulls back to the whole source.
        let full = HopfSubalgebra::full(&kc2);
        assert!(h_inverse(&sign, &full).unwrap().space.is_full());
        // Trivial subalgebra pulls back to the Hopf kernel.
        let triv = HopfSubalgebra::trivial(&kc2);
        let hi = h_inverse(&sign, &triv).unwrap();
        assert_eq!(hi.space, hkernel(&sign).unwrap().space);
        // h-inverse is the object part of the pullback along the inclusion.
        let (c_obj, c_incl) = triv.object("K").unwrap();
        let _ = c_obj;
        let pb = pullback(&sign, &c_incl).unwrap();
        assert_eq!(pb.p1.image(), hi.space);
        let _ = ks3;
    }

    #[test]
    fn direct_image_cases() {
        let (ks3, _, sign) = sign_setup();
        let a3 = subgroup_subalgebra(&ks3, &[0, 1, 2]).unwrap();
        let img = direct_image(&sign, &a3).unwrap();
        assert_eq!(img.dim(), 1);
        let full = HopfSubalgebra::full(&ks3);
        assert!(direct_image(&sign, &full).unwrap().space.is_full());
        let id = HopfMorphism::identity(&ks3);
        assert_eq!(direct_image(&id, &a3).unwrap().space, a3.space);
    }

    #[test]
    fn newman_phi_values() {
        let (ks3, _, sign) = sign_setup();
        let triv = HopfSubalgebra::trivial(&ks3);
        assert_eq!(newman_phi(&triv).unwrap().dim(), 0);
        let a3 = subgroup_subalgebra(&ks3, &[0, 1, 2]).unwrap();
        let phi = newman_phi(&a3).unwrap();
        assert_eq!(phi.dim(), 4);
        assert_eq!(phi.space, kernel_space(&sign.map));
        let full = HopfSubalgebra::full(&ks3);
        assert_eq!(newman_phi(&full).unwrap().space, plus_part(&ks3));
    }

    #[test]
    fn newman_psi_values_and_bijection() {
        let (ks3, _, _) = sign_setup();
        // Ψ(0) = K.
        let zero = LeftIdealCoideal::verified(
            ks3.clone(),
            Subspace::zero(FieldSpec::Rationals, 6),
        )
        .unwrap();
        let psi = newman_psi(&zero).unwrap();
        assert!(psi.is_trivial());
        // Ψ(A⁺) = A, matching Φ(A) = A⁺ under the bijection.
        let aplus = LeftIdealCoideal::verified(ks3.clone(), plus_part(&ks3)).unwrap();
        assert!(newman_psi(&aplus).unwrap().space.is_full());
        // Round trip on every subgroup of S₃.
        let s3 = groups::dihedral(3);
        for sg in groups::all_subgroups(&s3) {
            let d = subgroup_subalgebra(&ks3, &sg).unwrap();
            let phi = newman_phi(&d).unwrap();
            let back = newman_psi(&phi).unwrap();
            assert_eq!(back.space, d.space, "Ψ∘Φ failed on subgroup {sg:?}");
        }
    }

    #[test]
    fn normality_matches_the_group_oracle() {
        let (ks3, _, _) = sign_setup();
        let s3 = groups::dihedral(3);
        for sg in groups::all_subgroups(&s3) {
            let d = subgroup_subalgebra(&ks3, &sg).unwrap();
            let expect = groups::is_normal_subgroup(&s3, &sg);
            assert_eq!(is_normal(&d).unwrap(), expect, "subgroup {sg:?}");
        }
    }

    #[test]
    fn split_short_five_on_the_sign_extension() {
        let (ks3, kc2, sign) = sign_setup();
        let hk = hkernel(&sign).unwrap();
        let (x_obj, incl) = hk.object("K[A3]").unwrap();
        let _ = x_obj;
        // Section C₂ → S₃ through a reflection.
        let c2 = groups::cyclic(2);
        let s3 = groups::dihedral(3);
        let sec = crate::construct::group_hom_morphism(&kc2, &ks3, &c2, &s3, &[0, 3]).unwrap();
        let ext = Extension::verified(incl, sign, Some(sec)).unwrap();
        let ok = check_split_short_five(
            &ext,
            &ext,
            &HopfMorphism::identity(ext.kernel_object()),
            &HopfMorphism::identity(ext.middle()),
            &HopfMorphism::identity(ext.base()),
        )
        .unwrap();
        assert!(ok);
        // A non-commuting α is refused as a diagram error.
        let bad = HopfMorphism::trivial(ext.middle(), ext.middle()).unwrap();
        assert!(matches!(
            check_split_short_five(
                &ext,
                &ext,
                &HopfMorphism::identity(ext.kernel_object()),
                &bad,
                &HopfMorphism::identity(ext.base()),
            ),
            Err(Error::Diagram(_))
        ));
    }

    #[test]
    fn diagonal_normality_tracks_commutativity() {
        let f = FieldSpec::Rationals;
        let kc6 = group_algebra(f, &groups::cyclic(6)).unwrap();
        assert!(diagonal_normal(&kc6).unwrap());
        let (ks3, _, _) = sign_setup();
        assert!(!diagonal_normal(&ks3).unwrap());
        assert!(crate::hopf::is_commutative(&kc6.eval()));
        assert!(!crate::hopf::is_commutative(&ks3.eval()));
    }

    #[test]
    fn extension_validation_rejects_wrong_kernels() {
        let (ks3, _, sign) = sign_setup();
        // Use the trivial subalgebra as a (wrong) kernel.
        let triv = HopfSubalgebra::trivial(&ks3);
        let (_, incl) = triv.object("K").unwrap();
        assert!(matches!(
            Extension::verified(incl, sign, None),
            Err(Error::Diagram(_))
        ));
    }
}
