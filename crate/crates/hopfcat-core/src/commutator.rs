//! Huq commutators: commutation checks, the commutator subalgebra [X,Y],
//! quotients by normal Hopf subalgebras, and abelianization.

use std::collections::BTreeMap;

use crate::categorical::{cokernel, direct_image, hkernel, is_normal};
use crate::error::{Error, Result};
use crate::hopf::{
    is_commutative, Hopf, HopfMorphism, HopfOps, HopfSubalgebra,
};
use crate::matrix::{sparse_accumulate, sparse_from_map, SparseVec};
use crate::subspace::Echelon;

/// The two commutation criteria of the commutator lemma: elementwise
/// (ab = ba on all pairs) and Sweedler (a₁b₁S(a₂)S(b₂) = ε(a)ε(b)·1).
/// They are equivalent; `commute_check` verifies the verdicts agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommuteCheck {
    pub elementwise: bool,
    pub sweedler: bool,
}

impl CommuteCheck {
    pub fn both(&self) -> bool {
        self.elementwise && self.sweedler
    }
}

/// The Sweedler commutator {a,b} = a₁b₁S(a₂)S(b₂) of two basis vectors,
/// extended bilinearly by the callers.
fn basis_commutator(ev: &impl HopfOps, i: usize, j: usize) -> SparseVec {
    let d = ev.dim();
    let mut acc = BTreeMap::new();
    for (fa, ca) in &ev.comult_basis(i) {
        let (a1, a2) = (fa / d, fa % d);
        let sa2 = ev.antipode_basis(a2);
        for (fb, cb) in &ev.comult_basis(j) {
            let (b1, b2) = (fb / d, fb % d);
            let prod = ev.mult_apply(
                &ev.mult_apply(&ev.mult_pair(a1, b1), &sa2),
                &ev.antipode_basis(b2),
            );
            sparse_accumulate(&mut acc, &ca.mul(cb), &prod);
        }
    }
    sparse_from_map(acc)
}

/// {v,w} for arbitrary sparse vectors, by bilinearity.
fn sweedler_commutator(ev: &impl HopfOps, v: &SparseVec, w: &SparseVec) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (i, ci) in v {
        for (j, cj) in w {
            let c = ci.mul(cj);
            if !c.is_zero() {
                sparse_accumulate(&mut acc, &c, &basis_commutator(ev, *i, *j));
            }
        }
    }
    sparse_from_map(acc)
}

/// Tests whether two Hopf subalgebras of the same ambient commute, by both
/// criteria. A disagreement between the criteria would contradict the lemma
/// and is reported as an internal error.
pub fn commute_check(x: &HopfSubalgebra, y: &HopfSubalgebra) -> Result<CommuteCheck> {
    if *x.ambient != *y.ambient {
        return Err(Error::Diagram(
            "commute_check arguments live in different ambients".into(),
        ));
    }
    let ev = x.ambient.eval();
    let mut elementwise = true;
    'ew: for k in 0..x.space.dim() {
        let v = x.space.basis_row_sparse(k);
        for l in 0..y.space.dim() {
            let w = y.space.basis_row_sparse(l);
            if ev.mult_apply(&v, &w) != ev.mult_apply(&w, &v) {
                elementwise = false;
                break 'ew;
            }
        }
    }
    let mut sweedler = true;
    'sw: for k in 0..x.space.dim() {
        let v = x.space.basis_row_sparse(k);
        let ev_v = ev.counit_apply(&v);
        for l in 0..y.space.dim() {
            let w = y.space.basis_row_sparse(l);
            let scale = ev_v.mul(&ev.counit_apply(&w));
            let mut expect = BTreeMap::new();
            sparse_accumulate(&mut expect, &scale, &ev.unit_vec());
            if sweedler_commutator(&ev, &v, &w) != sparse_from_map(expect) {
                sweedler = false;
                break 'sw;
            }
        }
    }
    if elementwise != sweedler {
        return Err(Error::Internal(
            "elementwise and Sweedler commutation criteria disagree".into(),
        ));
    }
    Ok(CommuteCheck {
        elementwise,
        sweedler,
    })
}

/// The computed Huq commutator [X,Y]: the generating Sweedler commutators
/// and their multiplicative closure, verified as a normal Hopf subalgebra.
#[derive(Debug, Clone)]
pub struct CommutatorWitness {
    pub generators: Vec<SparseVec>,
    pub closure: HopfSubalgebra,
}

/// [X,Y] for normal Hopf subalgebras X, Y of the same ambient: the
/// subalgebra generated by the unit and all {a,b} over basis pairs. The
/// closure runs multiplication to a fixpoint; stability under S and Δ and
/// normality hold by theorem and are asserted, as is the defining property
/// that the images of X and Y commute in the quotient by [X,Y].
pub fn huq_commutator(x: &HopfSubalgebra, y: &HopfSubalgebra) -> Result<CommutatorWitness> {
    if *x.ambient != *y.ambient {
        return Err(Error::Diagram(
            "commutator arguments live in different ambients".into(),
        ));
    }
    if !is_normal(x)? {
        return Err(Error::NotNormal("left commutator argument".into()));
    }
    if !is_normal(y)? {
        return Err(Error::NotNormal("right commutator argument".into()));
    }
    let ambient = &x.ambient;
    let ev = ambient.eval();
    let mut generators = vec![ambient.unit_sparse()];
    for k in 0..x.space.dim() {
        let v = x.space.basis_row_sparse(k);
        for l in 0..y.space.dim() {
            let w = y.space.basis_row_sparse(l);
            generators.push(sweedler_commutator(&ev, &v, &w));
        }
    }
    let mut ech = Echelon::new(ambient.field(), ambient.dim());
    for g in &generators {
        ech.insert_sparse(g);
    }
    loop {
        let before = ech.rank();
        let snapshot = ech.rows_sparse();
        for a in &snapshot {
            for b in &snapshot {
                ech.insert_sparse(&ev.mult_apply(a, b));
            }
        }
        if ech.rank() == before {
            break;
        }
    }
    let closure = HopfSubalgebra::verified(ambient.clone(), ech.into_subspace())
        .map_err(|e| Error::Internal(format!("commutator closure is not a Hopf subalgebra: {e}")))?;
    if !is_normal(&closure)? {
        return Err(Error::Internal(
            "commutator closure is not normal in the ambient".into(),
        ));
    }
    // Defining property: X and Y commute after quotienting by the closure.
    let (_, incl) = closure.object(format!("[{}] part", ambient.name))?;
    let cok = cokernel(&incl)?;
    let qx = direct_image(&cok.proj, x)?;
    let qy = direct_image(&cok.proj, y)?;
    if !commute_check(&qx, &qy)?.both() {
        return Err(Error::Internal(
            "images do not commute in the quotient by the commutator".into(),
        ));
    }
    Ok(CommutatorWitness {
        generators,
        closure,
    })
}

/// The quotient by a normal Hopf subalgebra, with the Newman round trip
/// HKer(proj) = N asserted.
pub struct NormalQuotient {
    pub quotient: Hopf,
    pub proj: HopfMorphism,
}

pub fn quotient_by_normal(n: &HopfSubalgebra) -> Result<NormalQuotient> {
    if !is_normal(n)? {
        return Err(Error::NotNormal("quotient divisor".into()));
    }
    let (_, incl) = n.object(format!("sub of {}", n.ambient.name))?;
    let cok = cokernel(&incl)?;
    if hkernel(&cok.proj)?.space != n.space {
        return Err(Error::Internal(
            "Hopf kernel of the quotient projection is not the divisor".into(),
        ));
    }
    Ok(NormalQuotient {
        quotient: cok.quotient,
        proj: cok.proj,
    })
}

/// The abelianization A → A/A[A,A]⁺, verified commutative.
pub struct Abelianization {
    pub ab: Hopf,
    pub proj: HopfMorphism,
}

pub fn abelianization(a: &Hopf) -> Result<Abelianization> {
    let full = HopfSubalgebra::full(a);
    let commutator = huq_commutator(&full, &full)?;
    let nq = quotient_by_normal(&commutator.closure)?;
    if !is_commutative(&nq.quotient.eval()) {
        return Err(Error::Internal("abelianization is not commutative".into()));
    }
    Ok(Abelianization {
        ab: nq.quotient,
        proj: nq.proj,
    })
}
