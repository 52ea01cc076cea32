//! Module-algebra actions, crossed modules, reflexive graphs, cat¹
//! structures, internal groupoids, and the functors connecting them.
//!
//! The central objects: a crossed module (B acting on X with d: X → B
//! satisfying equivariance and the Peiffer identity) induces a groupoid on
//! the smash product X⋊B with source δ(x⊗b) = ε(x)b and target
//! γ(x⊗b) = d(x)b; conversely a cat¹ graph yields the crossed module
//! (HKer(δ), A₀, γ-restriction) with the conjugation action through i. The
//! groupoid multiplication is the canonical Mal'tsev composite
//! m(v⊗w) = v₁·(i·δ)(S(v₂))·w, and the inversion is
//! ι(v) = (i·δ)(v₁)·S(v₂)·(i·γ)(v₃); both are synthesized and then checked,
//! never trusted.

use std::collections::BTreeMap;

use crate::categorical::{hkernel, pullback, pullback_space, Extension, Pullback};
use crate::commutator::{commute_check, huq_commutator};
use crate::construct::{check_action_axioms, smash_product, ActionEval, SmashProduct};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groups;
use crate::hopf::{
    check_morphism, require_morphism, Hopf, HopfMorphism, HopfOps,
};
use crate::matrix::{sparse_accumulate, sparse_from_map, sparse_tensor, sparse_unit, Matrix, SparseVec};
use crate::report::AxiomReport;

// ---------------------------------------------------------------------------
// Actions and crossed modules
// ---------------------------------------------------------------------------

/// A module Hopf algebra: `acting` acts on `carrier` through
/// ξ: acting⊗carrier → carrier, with all six action axioms enforced at
/// construction.
#[derive(Debug, Clone)]
pub struct ModuleAction {
    pub acting: Hopf,
    pub carrier: Hopf,
    pub xi: Matrix,
}

impl ModuleAction {
    pub fn verified(acting: Hopf, carrier: Hopf, xi: Matrix) -> Result<ModuleAction> {
        let report = check_action_axioms(&acting, &carrier, &xi)?;
        if !report.passed() {
            return Err(Error::AxiomsFailed {
                subject: format!("action of {} on {}", acting.name, carrier.name),
                report,
            });
        }
        Ok(ModuleAction {
            acting,
            carrier,
            xi,
        })
    }

    pub fn eval(&self) -> Result<ActionEval<'_>> {
        ActionEval::new(&self.acting, &self.carrier, &self.xi)
    }
}

/// A crossed module: d: X → B plus an action of B on X. Construction only
/// validates endpoints; `check_crossed_module` decides equivariance and the
/// Peiffer identity (so deliberately broken inputs can be probed).
#[derive(Debug, Clone)]
pub struct CrossedModule {
    pub action: ModuleAction,
    pub d: HopfMorphism,
}

impl CrossedModule {
    pub fn new(action: ModuleAction, d: HopfMorphism) -> Result<CrossedModule> {
        if *d.source != *action.carrier || *d.target != *action.acting {
            return Err(Error::Diagram(
                "structure morphism endpoints do not match the action".into(),
            ));
        }
        Ok(CrossedModule { action, d })
    }
}

/// Verifies a crossed module: the action axioms and d's morphism axioms are
/// absorbed under prefixes, then equivariance d(ᵇx) = b₁d(x)S(b₂) and the
/// Peiffer identity ^{d(y)}x = y₁xS(y₂) are checked on all basis tuples.
pub fn check_crossed_module(cm: &CrossedModule) -> Result<AxiomReport> {
    let mut report = AxiomReport::new();
    report.absorb(
        "action",
        check_action_axioms(&cm.action.acting, &cm.action.carrier, &cm.action.xi)?,
    );
    report.absorb("d", check_morphism(&cm.d)?);

    let b = &cm.action.acting;
    let x = &cm.action.carrier;
    let bev = b.eval();
    let xev = x.eval();
    let act = cm.action.eval()?;
    let dcols = cm.d.map.columns_sparse();
    let db = b.dim();
    let dx = x.dim();

    let mut equivariance: Option<Vec<usize>> = None;
    'equi: for bi in 0..db {
        for xj in 0..dx {
            // d(ᵇx)
            let lhs = cm.d.map.apply_sparse(&act.act_pair(bi, xj));
            // b₁ d(x) S(b₂)
            let mut acc = BTreeMap::new();
            for (flat, c) in &bev.comult_basis(bi) {
                let (b1, b2) = (flat / db, flat % db);
                let t = bev.mult_apply(
                    &bev.mult_apply(&sparse_unit(b1, b.field()), &dcols[xj]),
                    &bev.antipode_basis(b2),
                );
                sparse_accumulate(&mut acc, c, &t);
            }
            if lhs != sparse_from_map(acc) {
                equivariance = Some(vec![bi, xj]);
                break 'equi;
            }
        }
    }
    report.record("equivariance", equivariance.map(crate::report::Witness::at));

    let mut peiffer: Option<Vec<usize>> = None;
    'pei: for yi in 0..dx {
        for xj in 0..dx {
            // ^{d(y)}x
            let lhs = act.act_apply(&dcols[yi], &sparse_unit(xj, x.field()));
            // y₁ x S(y₂)
            let mut acc = BTreeMap::new();
            for (flat, c) in &xev.comult_basis(yi) {
                let (y1, y2) = (flat / dx, flat % dx);
                let t = xev.mult_apply(&xev.mult_pair(y1, xj), &xev.antipode_basis(y2));
                sparse_accumulate(&mut acc, c, &t);
            }
            if lhs != sparse_from_map(acc) {
                peiffer = Some(vec![yi, xj]);
                break 'pei;
            }
        }
    }
    report.record("peiffer", peiffer.map(crate::report::Witness::at));
    Ok(report)
}

// ---------------------------------------------------------------------------
// Split extensions and the smash decomposition
// ---------------------------------------------------------------------------

/// The decomposition of a split extension: the conjugation action of the
/// base on the Hopf kernel, and the mutually inverse isomorphisms
/// φ: HKer⋊B → A, φ(k⊗b) = k·s(b) and ψ: A → HKer⋊B,
/// ψ(a) = a₁(s·δ)(S(a₂)) ⊗ δ(a₃).
pub struct SplitEpiDecomposition {
    pub action: ModuleAction,
    pub smash: SmashProduct,
    pub phi: HopfMorphism,
    pub psi: HopfMorphism,
}

pub fn split_epi_to_action(e: &Extension) -> Result<SplitEpiDecomposition> {
    let Some(s) = &e.section else {
        return Err(Error::Malformed(
            "split decomposition needs a section on the extension".into(),
        ));
    };
    let a = e.middle();
    let b = e.base();
    let (da, db) = (a.dim(), b.dim());
    let field = a.field();
    let aev = a.eval();
    let bev = b.eval();
    let hk = hkernel(&e.epi)?;
    let (x_obj, incl) = hk.object(format!("HKer({}↠{})", a.name, b.name))?;
    let dx = x_obj.dim();
    let incl_cols = incl.map.columns_sparse();
    let s_cols = s.map.columns_sparse();
    // s(S_B(e_j)) for the conjugation, (s·δ)(S_A(e_j)) for ψ.
    let s_anti: Vec<SparseVec> = (0..db)
        .map(|j| s.map.apply_sparse(&bev.antipode_basis(j)))
        .collect();
    let sd_anti: Vec<SparseVec> = (0..da)
        .map(|j| s.map.apply_sparse(&e.epi.map.apply_sparse(&aev.antipode_basis(j))))
        .collect();

    // ξ(b⊗k) = s(b₁)·k·s(S(b₂)), corestricted to the kernel.
    let mut xi = Matrix::zeros(field, dx, db * dx);
    for bi in 0..db {
        for k in 0..dx {
            let mut acc = BTreeMap::new();
            for (flat, c) in &bev.comult_basis(bi) {
                let (b1, b2) = (flat / db, flat % db);
                let t = aev.mult_apply(
                    &aev.mult_apply(&s_cols[b1], &incl_cols[k]),
                    &s_anti[b2],
                );
                sparse_accumulate(&mut acc, c, &t);
            }
            let conj = sparse_from_map(acc);
            let coords = hk.space.coords_sparse(&conj).ok_or_else(|| {
                Error::Internal("conjugation leaves the Hopf kernel".into())
            })?;
            xi.set_col(bi * dx + k, &coords);
        }
    }
    let action = ModuleAction::verified(b.clone(), x_obj.clone(), xi)?;
    let smash = smash_product(&x_obj, b, &action.xi)?;

    let mut phi = Matrix::zeros(field, da, dx * db);
    for k in 0..dx {
        for bi in 0..db {
            phi.set_col(
                k * db + bi,
                &aev.mult_apply(&incl_cols[k], &s_cols[bi]),
            );
        }
    }
    let phi = HopfMorphism::new(smash.product.clone(), a.clone(), phi)?;
    require_morphism(&phi, "smash comparison φ")?;

    let epi_cols = e.epi.map.columns_sparse();
    let mut psi = Matrix::zeros(field, dx * db, da);
    for i in 0..da {
        let mut acc = BTreeMap::new();
        for (f1, c1) in &aev.comult_basis(i) {
            let (x12, a3) = (f1 / da, f1 % da);
            for (f2, c2) in &aev.comult_basis(x12) {
                let (a1, a2) = (f2 / da, f2 % da);
                let kpart =
                    aev.mult_apply(&sparse_unit(a1, field), &sd_anti[a2]);
                let kcoords = hk.space.coords_sparse(&kpart).ok_or_else(|| {
                    Error::Internal("ψ kernel part leaves the Hopf kernel".into())
                })?;
                let t = sparse_tensor(&kcoords, &epi_cols[a3], db);
                sparse_accumulate(&mut acc, &c1.mul(c2), &t);
            }
        }
        psi.set_col(i, &sparse_from_map(acc));
    }
    let psi = HopfMorphism::new(a.clone(), smash.product.clone(), psi)?;
    require_morphism(&psi, "smash comparison ψ")?;

    if !phi.compose(&psi)?.map.is_identity() || !psi.compose(&phi)?.map.is_identity() {
        return Err(Error::Internal(
            "smash comparison maps are not mutually inverse".into(),
        ));
    }
    Ok(SplitEpiDecomposition {
        action,
        smash,
        phi,
        psi,
    })
}

// ---------------------------------------------------------------------------
// Reflexive graphs and groupoid structures
// ---------------------------------------------------------------------------

/// A reflexive graph δ, γ: A₁ ⇉ A₀ with common section i, δ·i = γ·i = id.
#[derive(Debug, Clone)]
pub struct ReflexiveGraph {
    pub a1: Hopf,
    pub a0: Hopf,
    pub delta: HopfMorphism,
    pub gamma: HopfMorphism,
    pub i: HopfMorphism,
}

impl ReflexiveGraph {
    pub fn verified(
        delta: HopfMorphism,
        gamma: HopfMorphism,
        i: HopfMorphism,
    ) -> Result<ReflexiveGraph> {
        let a1 = delta.source.clone();
        let a0 = delta.target.clone();
        if *gamma.source != *a1 || *gamma.target != *a0 || *i.source != *a0 || *i.target != *a1 {
            return Err(Error::Diagram("graph legs have mismatched endpoints".into()));
        }
        require_morphism(&delta, "graph source map δ")?;
        require_morphism(&gamma, "graph target map γ")?;
        require_morphism(&i, "graph section i")?;
        if !delta.compose(&i)?.map.is_identity() || !gamma.compose(&i)?.map.is_identity() {
            return Err(Error::Diagram("section is not split by δ and γ".into()));
        }
        Ok(ReflexiveGraph {
            a1,
            a0,
            delta,
            gamma,
            i,
        })
    }
}

/// A candidate groupoid: the composability pullback
/// P = {(v,w) : δ(v) = γ(w)} with a multiplication matrix m: P → A₁ and an
/// inversion matrix ι: A₁ → A₁. `check_groupoid` decides validity.
pub struct GroupoidStructure {
    pub graph: ReflexiveGraph,
    pub composable: Pullback,
    pub m: Matrix,
    pub iota: Matrix,
}

/// Builds the canonical Mal'tsev candidate structure on a reflexive graph:
/// m(v⊗w) = v₁·(i·δ)(S(v₂))·w on the composability pullback, and
/// ι = M∘((i·δ)⊗S⊗(i·γ))∘Δ². On a genuine cat¹ object these are the unique
/// groupoid operations; on anything else some groupoid axiom fails.
pub fn canonical_structure(graph: &ReflexiveGraph) -> Result<GroupoidStructure> {
    let composable = pullback(&graph.delta, &graph.gamma)?;
    let a1 = &graph.a1;
    let d1 = a1.dim();
    let field = a1.field();
    let ev = a1.eval();
    let ids: Vec<SparseVec> = (0..d1)
        .map(|k| {
            graph
                .i
                .map
                .apply_sparse(&graph.delta.map.apply_sparse(&ev.antipode_basis(k)))
        })
        .collect();
    let k = composable.space.dim();
    let mut m = Matrix::zeros(field, d1, k);
    for t in 0..k {
        let mut acc = BTreeMap::new();
        for (flat, c) in &composable.space.basis_row_sparse(t) {
            let (va, wb) = (flat / d1, flat % d1);
            for (f2, c2) in &ev.comult_basis(va) {
                let (v1, v2) = (f2 / d1, f2 % d1);
                let term = ev.mult_apply(
                    &ev.mult_apply(&sparse_unit(v1, field), &ids[v2]),
                    &sparse_unit(wb, field),
                );
                sparse_accumulate(&mut acc, &c.mul(c2), &term);
            }
        }
        m.set_col(t, &sparse_from_map(acc));
    }

    let idelta: Vec<SparseVec> = (0..d1)
        .map(|j| graph.i.map.apply_sparse(&graph.delta.map.col_sparse(j)))
        .collect();
    let igamma: Vec<SparseVec> = (0..d1)
        .map(|j| graph.i.map.apply_sparse(&graph.gamma.map.col_sparse(j)))
        .collect();
    let mut iota = Matrix::zeros(field, d1, d1);
    for t in 0..d1 {
        let mut acc = BTreeMap::new();
        for (f1, c1) in &ev.comult_basis(t) {
            let (k12, k3) = (f1 / d1, f1 % d1);
            for (f2, c2) in &ev.comult_basis(k12) {
                let (k1, k2) = (f2 / d1, f2 % d1);
                let term = ev.mult_apply(
                    &ev.mult_apply(&idelta[k1], &ev.antipode_basis(k2)),
                    &igamma[k3],
                );
                sparse_accumulate(&mut acc, &c1.mul(c2), &term);
            }
        }
        iota.set_col(t, &sparse_from_map(acc));
    }
    Ok(GroupoidStructure {
        graph: graph.clone(),
        composable,
        m,
        iota,
    })
}

/// The full groupoid axiom battery. Morphism reports for m and ι are
/// absorbed under the prefixes `mult` and `inverse`; the remaining named
/// checks are the unit laws, source/target compatibility, associativity
/// (evaluated on the triple-composable carrier without materializing its
/// Hopf structure), and the inverse laws.
pub fn check_groupoid(gs: &GroupoidStructure) -> Result<AxiomReport> {
    let mut report = AxiomReport::new();
    let graph = &gs.graph;
    let a1 = &graph.a1;
    let pb = &gs.composable;
    let m_mor = HopfMorphism::new(pb.object.clone(), a1.clone(), gs.m.clone())?;
    report.absorb("mult", check_morphism(&m_mor)?);
    let iota_mor = HopfMorphism::new(a1.clone(), a1.clone(), gs.iota.clone())?;
    report.absorb("inverse", check_morphism(&iota_mor)?);

    let id1 = HopfMorphism::identity(a1);
    let idelta = graph.i.compose(&graph.delta)?;
    let igamma = graph.i.compose(&graph.gamma)?;

    let pair_law = |report: &mut AxiomReport,
                    name: &str,
                    u: &HopfMorphism,
                    v: &HopfMorphism,
                    expect: &Matrix| match pb.pair(u, v) {
        Ok(h) => {
            if gs.m.mul(&h.map) == *expect {
                report.record_pass(name);
            } else {
                report.record_fail(name, vec![]);
            }
        }
        Err(_) => report.record_fail(name, vec![]),
    };
    let identity_matrix = Matrix::identity(a1.field(), a1.dim());
    pair_law(&mut report, "unit-law-left", &id1, &idelta, &identity_matrix);
    pair_law(&mut report, "unit-law-right", &igamma, &id1, &identity_matrix);

    report.record(
        "source-of-mult",
        if graph.delta.map.mul(&gs.m) == graph.delta.map.mul(&pb.p2.map) {
            None
        } else {
            Some(crate::report::Witness::at(vec![]))
        },
    );
    report.record(
        "target-of-mult",
        if graph.gamma.map.mul(&gs.m) == graph.gamma.map.mul(&pb.p1.map) {
            None
        } else {
            Some(crate::report::Witness::at(vec![]))
        },
    );

    check_associativity(&mut report, gs)?;

    report.record(
        "inverse-source",
        if graph.delta.map.mul(&gs.iota) == graph.gamma.map {
            None
        } else {
            Some(crate::report::Witness::at(vec![]))
        },
    );
    report.record(
        "inverse-target",
        if graph.gamma.map.mul(&gs.iota) == graph.delta.map {
            None
        } else {
            Some(crate::report::Witness::at(vec![]))
        },
    );
    pair_law(
        &mut report,
        "inverse-law-left",
        &iota_mor,
        &id1,
        &graph.i.map.mul(&graph.delta.map),
    );
    pair_law(
        &mut report,
        "inverse-law-right",
        &id1,
        &iota_mor,
        &graph.i.map.mul(&graph.gamma.map),
    );
    Ok(report)
}

/// m·(m×1) = m·(1×m) on the triple-composable carrier
/// Q = {((v,w),z) : δ(w) = γ(z)} ⊆ P ⊗ A₁, evaluated basis vector by basis
/// vector through sparse expansion and pivot corestriction into P.
fn check_associativity(report: &mut AxiomReport, gs: &GroupoidStructure) -> Result<()> {
    let graph = &gs.graph;
    let pb = &gs.composable;
    let d1 = graph.a1.dim();
    let dp2 = graph.delta.compose(&pb.p2)?;
    let q_space = pullback_space(&dp2, &graph.gamma)?;
    let m_cols = gs.m.columns_sparse();
    for qi in 0..q_space.dim() {
        let q = q_space.basis_row_sparse(qi);
        // (m×1)q, corestricted to P, then m.
        let mut acc = BTreeMap::new();
        for (flat, c) in &q {
            let (p, z) = (flat / d1, flat % d1);
            let t = sparse_tensor(&m_cols[p], &sparse_unit(z, graph.a1.field()), d1);
            sparse_accumulate(&mut acc, c, &t);
        }
        let Some(coords) = pb.space.coords_sparse(&sparse_from_map(acc)) else {
            report.record_fail("mult-assoc", vec![qi]);
            return Ok(());
        };
        let left = gs.m.apply_sparse(&coords);
        // (1×m)q: expand the P leg, group by the first tensor factor,
        // compose the (w,z) fibres, reassemble, corestrict, and compose.
        let mut fibres: BTreeMap<usize, BTreeMap<usize, crate::field::Scalar>> = BTreeMap::new();
        for (flat, c) in &q {
            let (p, z) = (flat / d1, flat % d1);
            for (f2, c2) in &pb.space.basis_row_sparse(p) {
                let (v, w) = (f2 / d1, f2 % d1);
                sparse_accumulate(
                    fibres.entry(v).or_default(),
                    &c.mul(c2),
                    &sparse_unit(w * d1 + z, graph.a1.field()),
                );
            }
        }
        let mut acc = BTreeMap::new();
        for (v, fibre) in fibres {
            let wz = sparse_from_map(fibre);
            let Some(coords) = pb.space.coords_sparse(&wz) else {
                report.record_fail("mult-assoc", vec![qi]);
                return Ok(());
            };
            let mm = gs.m.apply_sparse(&coords);
            sparse_accumulate(
                &mut acc,
                &crate::field::Scalar::one(graph.a1.field()),
                &sparse_tensor(&sparse_unit(v, graph.a1.field()), &mm, d1),
            );
        }
        let Some(coords) = pb.space.coords_sparse(&sparse_from_map(acc)) else {
            report.record_fail("mult-assoc", vec![qi]);
            return Ok(());
        };
        let right = gs.m.apply_sparse(&coords);
        if left != right {
            report.record_fail("mult-assoc", vec![qi]);
            return Ok(());
        }
    }
    report.record_pass("mult-assoc");
    Ok(())
}

// ---------------------------------------------------------------------------
// The functors between crossed modules and cat¹ objects
// ---------------------------------------------------------------------------

/// The reflexive graph underlying a crossed module: A₁ = X⋊B with
/// δ(x⊗b) = ε(x)b, γ(x⊗b) = d(x)b, i(b) = 1⊗b. The crossed-module axioms
/// are NOT enforced here, so a Peiffer-violating input can be pushed through
/// to watch the induced multiplication fail.
pub fn graph_of_crossed(cm: &CrossedModule) -> Result<(SmashProduct, ReflexiveGraph)> {
    let sp = smash_product(&cm.action.carrier, &cm.action.acting, &cm.action.xi)?;
    let b = &cm.action.acting;
    let bev = b.eval();
    let (dx, db) = (cm.action.carrier.dim(), b.dim());
    let dcols = cm.d.map.columns_sparse();
    let mut gm = Matrix::zeros(b.field(), db, dx * db);
    for i in 0..dx {
        for j in 0..db {
            gm.set_col(
                i * db + j,
                &bev.mult_apply(&dcols[i], &sparse_unit(j, b.field())),
            );
        }
    }
    let gamma = HopfMorphism::new(sp.product.clone(), b.clone(), gm)?;
    require_morphism(&gamma, "target map of the induced graph")?;
    let graph = ReflexiveGraph::verified(sp.proj_b.clone(), gamma, sp.inj_b.clone())?;
    Ok((sp, graph))
}

/// Functor G: crossed module → internal groupoid, with every axiom of the
/// output machine-checked.
pub fn crossed_to_cat1(cm: &CrossedModule) -> Result<GroupoidStructure> {
    let report = check_crossed_module(cm)?;
    if !report.passed() {
        return Err(Error::AxiomsFailed {
            subject: "crossed module".into(),
            report,
        });
    }
    let (_, graph) = graph_of_crossed(cm)?;
    let gs = canonical_structure(&graph)?;
    let report = check_groupoid(&gs)?;
    if !report.passed() {
        return Err(Error::AxiomsFailed {
            subject: "induced groupoid".into(),
            report,
        });
    }
    Ok(gs)
}

/// Is the graph a cat¹ object? The defining condition: HKer(δ) and HKer(γ)
/// commute elementwise.
pub fn is_cat1(g: &ReflexiveGraph) -> Result<bool> {
    let hkd = hkernel(&g.delta)?;
    let hkg = hkernel(&g.gamma)?;
    Ok(commute_check(&hkd, &hkg)?.elementwise)
}

/// Functor F: cat¹ object → crossed module: X = HKer(δ), d = γ restricted,
/// action ^a k = i(a₁)·k·i(S(a₂)).
pub fn cat1_to_crossed(g: &ReflexiveGraph) -> Result<CrossedModule> {
    if !is_cat1(g)? {
        return Err(Error::NotCat1);
    }
    let hk = hkernel(&g.delta)?;
    let (x_obj, incl) = hk.object(format!("HKer(δ) in {}", g.a1.name))?;
    let d = g.gamma.compose(&incl)?;
    let a0ev = g.a0.eval();
    let a1ev = g.a1.eval();
    let (d0, dx) = (g.a0.dim(), x_obj.dim());
    let i_cols = g.i.map.columns_sparse();
    let i_anti: Vec<SparseVec> = (0..d0)
        .map(|j| g.i.map.apply_sparse(&a0ev.antipode_basis(j)))
        .collect();
    let incl_cols = incl.map.columns_sparse();
    let mut xi = Matrix::zeros(g.a0.field(), dx, d0 * dx);
    for ai in 0..d0 {
        for k in 0..dx {
            let mut acc = BTreeMap::new();
            for (flat, c) in &a0ev.comult_basis(ai) {
                let (a1, a2) = (flat / d0, flat % d0);
                let t = a1ev.mult_apply(
                    &a1ev.mult_apply(&i_cols[a1], &incl_cols[k]),
                    &i_anti[a2],
                );
                sparse_accumulate(&mut acc, c, &t);
            }
            let coords = hk.space.coords_sparse(&sparse_from_map(acc)).ok_or_else(|| {
                Error::Internal("conjugation through i leaves the kernel".into())
            })?;
            xi.set_col(ai * dx + k, &coords);
        }
    }
    let action = ModuleAction::verified(g.a0.clone(), x_obj, xi)?;
    let cm = CrossedModule::new(action, d)?;
    let report = check_crossed_module(&cm)?;
    if !report.passed() {
        return Err(Error::AxiomsFailed {
            subject: "extracted crossed module".into(),
            report,
        });
    }
    Ok(cm)
}

// ---------------------------------------------------------------------------
// The equivalence verdicts
// ---------------------------------------------------------------------------

/// The four equivalent characterizations of a cat¹ object, computed
/// independently so the suites can assert they coincide: (a) the canonical
/// candidate makes a reflexive-multiplicative graph, (b) it makes an
/// internal groupoid, (c) [HKer(δ), HKer(γ)] is trivial, (d) the kernels
/// commute elementwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceVerdicts {
    pub multiplicative: bool,
    pub groupoid: bool,
    pub commutator_trivial: bool,
    pub cat1: bool,
}

impl EquivalenceVerdicts {
    pub fn unanimous(&self) -> Option<bool> {
        let v = self.cat1;
        (self.multiplicative == v && self.groupoid == v && self.commutator_trivial == v)
            .then_some(v)
    }
}

const RGM_CHECKS: &[&str] = &[
    "unit-law-left",
    "unit-law-right",
    "source-of-mult",
    "target-of-mult",
];

pub fn equivalence_verdicts(g: &ReflexiveGraph) -> Result<EquivalenceVerdicts> {
    let hkd = hkernel(&g.delta)?;
    let hkg = hkernel(&g.gamma)?;
    let cat1 = commute_check(&hkd, &hkg)?.elementwise;
    let commutator_trivial = huq_commutator(&hkd, &hkg)?.closure.is_trivial();
    let gs = canonical_structure(g)?;
    let report = check_groupoid(&gs)?;
    let multiplicative = report.checks.iter().all(|c| {
        let relevant = c.name.starts_with("mult.") || RGM_CHECKS.contains(&c.name.as_str());
        !relevant || c.passed
    });
    Ok(EquivalenceVerdicts {
        multiplicative,
        groupoid: report.passed(),
        commutator_trivial,
        cat1,
    })
}

// ---------------------------------------------------------------------------
// Isomorphism tests (group-like matching)
// ---------------------------------------------------------------------------

/// The element map of a morphism between group-algebra-like objects: each
/// column must be exactly one basis vector.
fn morphism_element_map(f: &HopfMorphism) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(f.source.dim());
    for j in 0..f.source.dim() {
        let col = f.map.col_sparse(j);
        match col.as_slice() {
            [(i, c)] if c.is_one() => out.push(*i),
            _ => {
                return Err(Error::Malformed(
                    "morphism does not map basis vectors to basis vectors".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// The action's element map: (b, x) ↦ index of ᵇx.
fn action_element_map(a: &ModuleAction) -> Result<Vec<Vec<usize>>> {
    let act = a.eval()?;
    let (db, dx) = (a.acting.dim(), a.carrier.dim());
    let mut out = vec![vec![0usize; dx]; db];
    for b in 0..db {
        for x in 0..dx {
            match act.act_pair(b, x).as_slice() {
                [(i, c)] if c.is_one() => out[b][x] = *i,
                _ => {
                    return Err(Error::Malformed(
                        "action does not permute basis vectors".into(),
                    ))
                }
            }
        }
    }
    Ok(out)
}

fn bijective_homs(
    a: &crate::groups::FiniteGroupTable,
    b: &crate::groups::FiniteGroupTable,
) -> Vec<Vec<usize>> {
    if a.order() != b.order() {
        return Vec::new();
    }
    crate::groups::all_homs(a, b)
        .into_iter()
        .filter(|h| {
            let mut seen = vec![false; b.order()];
            h.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
        })
        .collect()
}

/// Are two crossed modules isomorphic? Searches for a pair of group
/// isomorphisms (α on carriers, β on bases) with β∘d = d'∘α and
/// α(ᵇx) = ^{β(b)}α(x).
pub fn crossed_isomorphic(c1: &CrossedModule, c2: &CrossedModule) -> Result<bool> {
    let x1 = crate::construct::group_like_table(&c1.action.carrier)?;
    let x2 = crate::construct::group_like_table(&c2.action.carrier)?;
    let b1 = crate::construct::group_like_table(&c1.action.acting)?;
    let b2 = crate::construct::group_like_table(&c2.action.acting)?;
    if x1.order() != x2.order() || b1.order() != b2.order() {
        return Ok(false);
    }
    let d1 = morphism_element_map(&c1.d)?;
    let d2 = morphism_element_map(&c2.d)?;
    let act1 = action_element_map(&c1.action)?;
    let act2 = action_element_map(&c2.action)?;
    for alpha in bijective_homs(&x1, &x2) {
        for beta in bijective_homs(&b1, &b2) {
            let d_compat = (0..x1.order()).all(|i| d2[alpha[i]] == beta[d1[i]]);
            if !d_compat {
                continue;
            }
            let act_compat = (0..b1.order()).all(|b| {
                (0..x1.order()).all(|x| alpha[act1[b][x]] == act2[beta[b]][alpha[x]])
            });
            if act_compat {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Are two reflexive graphs isomorphic? Searches for group isomorphisms
/// (f₁ on arrows, f₀ on objects) commuting with δ, γ and i.
pub fn graphs_isomorphic(g1: &ReflexiveGraph, g2: &ReflexiveGraph) -> Result<bool> {
    let t1a1 = crate::construct::group_like_table(&g1.a1)?;
    let t2a1 = crate::construct::group_like_table(&g2.a1)?;
    let t1a0 = crate::construct::group_like_table(&g1.a0)?;
    let t2a0 = crate::construct::group_like_table(&g2.a0)?;
    if t1a1.order() != t2a1.order() || t1a0.order() != t2a0.order() {
        return Ok(false);
    }
    let (del1, gam1, i1) = (
        morphism_element_map(&g1.delta)?,
        morphism_element_map(&g1.gamma)?,
        morphism_element_map(&g1.i)?,
    );
    let (del2, gam2, i2) = (
        morphism_element_map(&g2.delta)?,
        morphism_element_map(&g2.gamma)?,
        morphism_element_map(&g2.i)?,
    );
    for f1 in bijective_homs(&t1a1, &t2a1) {
        for f0 in bijective_homs(&t1a0, &t2a0) {
            let ok = (0..t1a1.order()).all(|v| {
                del2[f1[v]] == f0[del1[v]] && gam2[f1[v]] == f0[gam1[v]]
            }) && (0..t1a0.order()).all(|b| f1[i1[b]] == i2[f0[b]]);
            if ok {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Fixtures: catalog crossed modules and graphs
// ---------------------------------------------------------------------------

/// (K[S₃] acting on K[A₃] by conjugation, d = inclusion).
pub fn conjugation_crossed_module(field: FieldSpec) -> Result<CrossedModule> {
    inclusion_crossed_module(field, &groups::dihedral(3), &[0, 1, 2], "A3")
}

/// (K[G] acting on K[N] by conjugation, d = inclusion) for N ⊴ G.
pub fn inclusion_crossed_module(
    field: FieldSpec,
    g: &groups::FiniteGroupTable,
    normal: &[usize],
    name: &str,
) -> Result<CrossedModule> {
    let table = groups::subgroup_table(g, normal, name)?;
    let b = crate::construct::group_algebra(field, g)?;
    let x = crate::construct::group_algebra(field, &table)?;
    let d = crate::construct::group_hom_morphism(&x, &b, &table, g, normal)?;
    let conj = groups::conjugation_action(g, normal)?;
    let pos: BTreeMap<usize, usize> =
        normal.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let xi = crate::construct::group_action_matrix(field, g, &table, |bi, xj| {
        pos[&conj[&(bi, normal[xj])]]
    });
    CrossedModule::new(ModuleAction::verified(b, x, xi)?, d)
}

/// (K[C₂] acting on K[C₃] by inversion, d trivial): a crossed module with a
/// nontrivial action but no structure morphism information.
pub fn inversion_crossed_module(field: FieldSpec) -> Result<CrossedModule> {
    let c2 = groups::cyclic(2);
    let c3 = groups::cyclic(3);
    let b = crate::construct::group_algebra(field, &c2)?;
    let x = crate::construct::group_algebra(field, &c3)?;
    let xi = crate::construct::group_action_matrix(field, &c2, &c3, |bi, xj| {
        if bi == 0 {
            xj
        } else {
            c3.inv(xj)
        }
    });
    let d = HopfMorphism::trivial(&x, &b)?;
    CrossedModule::new(ModuleAction::verified(b, x, xi)?, d)
}

/// (K[C₂] acting trivially on K[C₃], d trivial): the tensor case.
pub fn tensor_crossed_module(field: FieldSpec) -> Result<CrossedModule> {
    let b = crate::construct::group_algebra(field, &groups::cyclic(2))?;
    let x = crate::construct::group_algebra(field, &groups::cyclic(3))?;
    let xi = crate::construct::trivial_action(&b, &x);
    let d = HopfMorphism::trivial(&x, &b)?;
    CrossedModule::new(ModuleAction::verified(b, x, xi)?, d)
}

/// (K[G] acting on K, unique d): the terminal carrier.
pub fn point_crossed_module(field: FieldSpec, g: &groups::FiniteGroupTable) -> Result<CrossedModule> {
    let b = crate::construct::group_algebra(field, g)?;
    let x = crate::construct::group_algebra(field, &groups::cyclic(1))?;
    let xi = crate::construct::trivial_action(&b, &x);
    let d = HopfMorphism::trivial(&x, &b)?;
    CrossedModule::new(ModuleAction::verified(b, x, xi)?, d)
}

/// All action axioms hold, d is a morphism, equivariance holds, but the
/// Peiffer identity fails: B = K[C₂] acts trivially on the noncommutative
/// X = K[S₃] with d trivial, so ^{d(y)}x = ε(y)x but y₁xS(y₂) ≠ ε(y)x.
pub fn peiffer_violating_input(field: FieldSpec) -> Result<CrossedModule> {
    let b = crate::construct::group_algebra(field, &groups::cyclic(2))?;
    let x = crate::construct::group_algebra(field, &groups::dihedral(3))?;
    let xi = crate::construct::trivial_action(&b, &x);
    let d = HopfMorphism::trivial(&x, &b)?;
    CrossedModule::new(ModuleAction::verified(b, x, xi)?, d)
}

/// The discrete graph A ⇉ A with all maps the identity.
pub fn discrete_graph(a: &Hopf) -> Result<ReflexiveGraph> {
    ReflexiveGraph::verified(
        HopfMorphism::identity(a),
        HopfMorphism::identity(a),
        HopfMorphism::identity(a),
    )
}

/// The one-object graph A ⇉ K: δ = γ = ε, i = u. Cat¹ exactly when A is
/// commutative.
pub fn one_object_graph(a: &Hopf) -> Result<ReflexiveGraph> {
    let k = crate::construct::group_algebra(a.field(), &groups::cyclic(1))?;
    ReflexiveGraph::verified(
        HopfMorphism::trivial(a, &k)?,
        HopfMorphism::trivial(a, &k)?,
        HopfMorphism::trivial(&k, a)?,
    )
}

/// The pair graph A⊗A ⇉ A: δ = second projection, γ = first, i = Δ.
pub fn pair_graph(a: &Hopf) -> Result<ReflexiveGraph> {
    let tp = crate::hopf::tensor_product(a, a)?;
    let diag = HopfMorphism::new(a.clone(), tp.product.clone(), a.comult.clone())?;
    require_morphism(&diag, "pair graph diagonal")?;
    ReflexiveGraph::verified(tp.p2, tp.p1, diag)
}

/// A ⇉ A/-like graph from a split epimorphism used as both legs.
pub fn split_epi_graph(p: &HopfMorphism, section: &HopfMorphism) -> Result<ReflexiveGraph> {
    ReflexiveGraph::verified(p.clone(), p.clone(), section.clone())
}
