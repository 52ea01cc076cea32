//! `hopfcat` — exact computations with finite-dimensional cocommutative
//! Hopf algebras: kernels and cokernels, Newman's correspondence, Huq
//! commutators, smash products, the crossed-module ↔ cat¹ dictionary, and
//! a deterministic property suite over the built-in group-algebra catalog.
//!
//! Exit codes: 0 = verdict positive, 1 = a mathematical property failed on
//! well-formed input, 2 = unusable input (bad file, unknown group, bad
//! flags).

use clap::{Args, Parser, Subcommand};
use hopfcat_cli::suite::{run_suite, Injection, SuiteConfig};
use hopfcat_cli::{catalog, format, CliError, CliResult};
use hopfcat_core::categorical::{
    check_split_short_five, cokernel, diagonal_normal, direct_image, equalizer, h_inverse,
    hkernel, image_factorization, is_normal, newman_phi, newman_psi, phi_is_hopf_ideal, pullback,
    subgroup_subalgebra, Extension,
};
use hopfcat_core::commutator::{abelianization, commute_check, huq_commutator, quotient_by_normal};
use hopfcat_core::construct::{group_algebra, group_hom_morphism};
use hopfcat_core::groups;
use hopfcat_core::hopf::{check_hopf_axioms, dual_fd, Hopf, HopfMorphism, HopfSubalgebra};
use hopfcat_core::xmod::{
    canonical_structure, cat1_to_crossed, check_crossed_module, check_groupoid,
    conjugation_crossed_module, crossed_isomorphic, crossed_to_cat1, discrete_graph,
    equivalence_verdicts, graph_of_crossed, graphs_isomorphic, inclusion_crossed_module,
    inversion_crossed_module, one_object_graph, pair_graph, peiffer_violating_input,
    point_crossed_module, split_epi_graph, split_epi_to_action, tensor_crossed_module,
    CrossedModule, ReflexiveGraph,
};

#[derive(Parser)]
#[command(
    name = "hopfcat",
    version,
    about = "Exact structural computations with finite-dimensional cocommutative Hopf algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Addressing one Hopf algebra: a JSON file, or a catalog group algebra.
#[derive(Args)]
struct ObjectArgs {
    /// JSON description file (format version 1).
    #[arg(long, conflicts_with = "group")]
    file: Option<String>,
    /// Catalog group shortcut: C1, C2, C3, C4, C6, V4, S3, D4, Q8.
    #[arg(long)]
    group: Option<String>,
    /// Coefficient field, Q or Fp:<prime>. Ignored for --file input.
    #[arg(long, default_value = "Q")]
    field: String,
}

impl ObjectArgs {
    fn load(&self) -> CliResult<Hopf> {
        let field = catalog::parse_field(&self.field)?;
        catalog::load(self.file.as_deref(), self.group.as_deref(), field)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the axiom battery of one object; optionally re-serialize it.
    Check {
        #[command(flatten)]
        obj: ObjectArgs,
        /// Write the canonical JSON form of the object to this path.
        #[arg(long)]
        out: Option<String>,
    },
    /// Hopf kernel HKer(f) of a group-algebra morphism.
    Kernel {
        /// Morphism as SRC>TGT:comma-separated element images, e.g. S3>C2:0,0,0,1,1,1.
        #[arg(long)]
        hom: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Cokernel of a morphism, or the quotient by a normal subgroup algebra.
    Cokernel {
        #[arg(long, conflicts_with_all = ["group", "normal"])]
        hom: Option<String>,
        #[arg(long, requires = "normal")]
        group: Option<String>,
        /// Comma-separated element indices of a normal subgroup.
        #[arg(long, requires = "group")]
        normal: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Regular epi–mono factorization of a morphism through its image.
    Factorize {
        #[arg(long)]
        hom: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Pullback of two morphisms with a common target.
    Pullback {
        #[arg(long)]
        hom: String,
        #[arg(long)]
        hom2: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Equalizer of a parallel pair of morphisms.
    Equalizer {
        #[arg(long)]
        hom: String,
        #[arg(long)]
        hom2: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Inverse image p⁻¹(C) of a subalgebra of the target along an epi.
    Hinv {
        #[arg(long)]
        hom: String,
        /// Element indices spanning a subgroup of the target.
        #[arg(long)]
        sub: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Newman's correspondence between subalgebras and ideals.
    Newman {
        #[command(subcommand)]
        dir: NewmanDir,
    },
    /// Normality of a subgroup algebra, or of the diagonal embedding.
    Normal {
        #[command(flatten)]
        obj: ObjectArgs,
        /// Element indices spanning a subgroup.
        #[arg(long, conflicts_with = "diagonal")]
        sub: Option<String>,
        /// Test the diagonal A → A⊗A for normality instead.
        #[arg(long)]
        diagonal: bool,
    },
    /// Huq commutator of two normal subgroup algebras.
    Commutator {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        sub2: String,
    },
    /// Abelianization A → A/[A,A].
    Abelianize {
        #[command(flatten)]
        obj: ObjectArgs,
    },
    /// Smash product of an action fixture, or of a split epi with section.
    Smash {
        /// conjugation | inversion | tensor | peiffer | point:G | inclusion:G:elems
        #[arg(long, conflicts_with_all = ["hom", "section"])]
        fixture: Option<String>,
        /// Split epimorphism SRC>TGT:images.
        #[arg(long, requires = "section")]
        hom: Option<String>,
        /// Section of the epi as element images TGT→SRC.
        #[arg(long, requires = "hom")]
        section: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Crossed modules and internal reflexive graphs.
    Xmod {
        #[command(subcommand)]
        op: XmodOp,
    },
    /// Finite dual of an object (requires a commutative base to stay in scope).
    Dual {
        #[command(flatten)]
        obj: ObjectArgs,
    },
    /// Run the deterministic property suite over the catalog.
    Suite {
        /// Base seed for the randomized spot checks (HOPFCAT_SEED overrides).
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated catalog groups, e.g. C2,S3,Q8.
        #[arg(long)]
        groups: Option<String>,
        /// Comma-separated fields, e.g. Q,Fp:2,Fp:3.
        #[arg(long)]
        fields: Option<String>,
        /// Skip groups whose algebra dimension exceeds this bound.
        #[arg(long)]
        max_dim: Option<usize>,
        /// Deliberate fault injection (antipode) to demonstrate detection.
        #[arg(long)]
        inject: Option<String>,
    },
}

#[derive(Subcommand)]
enum NewmanDir {
    /// Φ: subgroup algebra K[H] ↦ the left ideal coideal K[G]·K[H]⁺.
    Phi {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long)]
        sub: String,
    },
    /// Ψ∘Φ round trip on a subgroup algebra; verifies Ψ(Φ(D)) = D.
    Psi {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long)]
        sub: String,
    },
}

#[derive(Subcommand)]
enum XmodOp {
    /// Check crossed-module axioms (--fixture) or groupoid structure (--graph).
    Check {
        #[arg(long, conflicts_with = "graph")]
        fixture: Option<String>,
        /// discrete:G | one-object:G | pair:G | sign | of-crossed:FIXTURE
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Build the internal groupoid (cat¹ object) of a crossed module.
    ToCat1 {
        #[arg(long)]
        fixture: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Extract the crossed module of a cat¹ reflexive graph.
    FromCat1 {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Round-trip a fixture (crossed→cat¹→crossed) or a graph the other way.
    Roundtrip {
        #[arg(long, conflicts_with = "graph")]
        fixture: Option<String>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

fn parse_fixture(spec: &str, field: hopfcat_core::FieldSpec) -> CliResult<CrossedModule> {
    if let Some(rest) = spec.strip_prefix("point:") {
        return Ok(point_crossed_module(field, &catalog::group(rest)?)?);
    }
    if let Some(rest) = spec.strip_prefix("inclusion:") {
        let (gname, elems) = rest.split_once(':').ok_or_else(|| {
            CliError::Arg(format!("fixture {spec:?} needs inclusion:GROUP:elems"))
        })?;
        let table = catalog::group(gname)?;
        let elems = catalog::parse_elems(elems)?;
        return Ok(inclusion_crossed_module(field, &table, &elems, "H")?);
    }
    match spec {
        "conjugation" => Ok(conjugation_crossed_module(field)?),
        "inversion" => Ok(inversion_crossed_module(field)?),
        "tensor" => Ok(tensor_crossed_module(field)?),
        "peiffer" => Ok(peiffer_violating_input(field)?),
        other => Err(CliError::Arg(format!(
            "unknown fixture {other:?} (available: conjugation, inversion, tensor, peiffer, point:G, inclusion:G:elems)"
        ))),
    }
}

fn parse_graph(spec: &str, field: hopfcat_core::FieldSpec) -> CliResult<ReflexiveGraph> {
    if let Some(rest) = spec.strip_prefix("discrete:") {
        return Ok(discrete_graph(&catalog::group_hopf(rest, field)?)?);
    }
    if let Some(rest) = spec.strip_prefix("one-object:") {
        return Ok(one_object_graph(&catalog::group_hopf(rest, field)?)?);
    }
    if let Some(rest) = spec.strip_prefix("pair:") {
        return Ok(pair_graph(&catalog::group_hopf(rest, field)?)?);
    }
    if let Some(rest) = spec.strip_prefix("of-crossed:") {
        let cm = parse_fixture(rest, field)?;
        return Ok(graph_of_crossed(&cm)?.1);
    }
    if spec == "sign" {
        let s3 = groups::dihedral(3);
        let c2 = groups::cyclic(2);
        let ks3 = group_algebra(field, &s3)?;
        let kc2 = group_algebra(field, &c2)?;
        let p = group_hom_morphism(&ks3, &kc2, &s3, &c2, &[0, 0, 0, 1, 1, 1])?;
        let s = group_hom_morphism(&kc2, &ks3, &c2, &s3, &[0, 3])?;
        return Ok(split_epi_graph(&p, &s)?);
    }
    Err(CliError::Arg(format!(
        "unknown graph {spec:?} (available: discrete:G, one-object:G, pair:G, sign, of-crossed:FIXTURE)"
    )))
}

fn print_basis(space: &hopfcat_core::Subspace) {
    for k in 0..space.dim() {
        let parts: Vec<String> = space
            .basis_row_sparse(k)
            .iter()
            .map(|(i, c)| format!("{i}:{c}"))
            .collect();
        println!("  basis[{k}] = {}", parts.join(" "));
    }
}

fn report_failures(report: &hopfcat_core::AxiomReport) {
    for c in report.failures() {
        let at = c
            .witness
            .as_ref()
            .map(|w| format!(" at {:?}", w.indices))
            .unwrap_or_default();
        println!("FAIL {}{}", c.name, at);
    }
}

fn sub_by_elems(h: &Hopf, elems: &str) -> CliResult<HopfSubalgebra> {
    let elems = catalog::parse_elems(elems)?;
    Ok(subgroup_subalgebra(h, &elems)?)
}

fn run(cmd: Cmd) -> CliResult<bool> {
    match cmd {
        Cmd::Check { obj, out } => {
            let h = obj.load()?;
            let report = check_hopf_axioms(&h)?;
            report_failures(&report);
            println!(
                "CHECK {} dim={} checks={} ok={}",
                h.name,
                h.dim(),
                report.checks.len(),
                report.passed()
            );
            if let Some(path) = out {
                format::write_hopf(&h, std::path::Path::new(&path))?;
                println!("WROTE {path}");
            }
            Ok(report.passed())
        }
        Cmd::Kernel { hom, field } => {
            let field = catalog::parse_field(&field)?;
            let rh = catalog::parse_hom(&hom, field)?;
            let hk = hkernel(&rh.morphism)?;
            println!("HKER dim={} of {}", hk.dim(), hom);
            print_basis(&hk.space);
            Ok(true)
        }
        Cmd::Cokernel { hom, group, normal, field } => {
            let field = catalog::parse_field(&field)?;
            if let Some(spec) = hom {
                let rh = catalog::parse_hom(&spec, field)?;
                let cok = cokernel(&rh.morphism)?;
                println!("COKERNEL dim={} ideal-dim={}", cok.quotient.dim(), cok.ideal.dim());
                Ok(true)
            } else {
                let (Some(gname), Some(elems)) = (group, normal) else {
                    return Err(CliError::Arg(
                        "cokernel needs --hom, or --group with --normal".into(),
                    ));
                };
                let h = catalog::group_hopf(&gname, field)?;
                let sub = sub_by_elems(&h, &elems)?;
                let q = quotient_by_normal(&sub)?;
                println!(
                    "COKERNEL dim={} name={} proj-surjective={}",
                    q.quotient.dim(),
                    q.quotient.name,
                    q.proj.is_surjective()
                );
                Ok(true)
            }
        }
        Cmd::Factorize { hom, field } => {
            let field = catalog::parse_field(&field)?;
            let rh = catalog::parse_hom(&hom, field)?;
            let fac = image_factorization(&rh.morphism)?;
            let recomposed = fac.mono_part.compose(&fac.epi_part)?;
            let exact = recomposed.map == rh.morphism.map;
            println!(
                "FACTOR image-dim={} hker-dim={} epi-surjective={} mono-injective={} recomposes={}",
                fac.image.dim(),
                fac.hker.dim(),
                fac.epi_part.is_surjective(),
                fac.mono_part.is_injective(),
                exact
            );
            Ok(exact)
        }
        Cmd::Pullback { hom, hom2, field } => {
            let field = catalog::parse_field(&field)?;
            let f = catalog::parse_hom(&hom, field)?;
            let g = catalog::parse_hom(&hom2, field)?;
            let pb = pullback(&f.morphism, &g.morphism)?;
            println!(
                "PULLBACK dim={} p1-rank={} p2-rank={}",
                pb.object.dim(),
                pb.p1.rank(),
                pb.p2.rank()
            );
            Ok(true)
        }
        Cmd::Equalizer { hom, hom2, field } => {
            let field = catalog::parse_field(&field)?;
            let f = catalog::parse_hom(&hom, field)?;
            let g = catalog::parse_hom(&hom2, field)?;
            let eq = equalizer(&f.morphism, &g.morphism)?;
            println!("EQUALIZER dim={}", eq.dim());
            print_basis(&eq.space);
            Ok(true)
        }
        Cmd::Hinv { hom, sub, field } => {
            let field = catalog::parse_field(&field)?;
            let rh = catalog::parse_hom(&hom, field)?;
            let c = sub_by_elems(&rh.target, &sub)?;
            let hi = h_inverse(&rh.morphism, &c)?;
            let image = direct_image(&rh.morphism, &hi)?;
            let onto = image.space == c.space;
            println!(
                "HINV dim={} restriction-onto={} of subalgebra dim={}",
                hi.dim(),
                onto,
                c.dim()
            );
            Ok(onto)
        }
        Cmd::Newman { dir } => match dir {
            NewmanDir::Phi { obj, sub } => {
                let h = obj.load()?;
                let d = sub_by_elems(&h, &sub)?;
                let phi = newman_phi(&d)?;
                let hopf_ideal = phi_is_hopf_ideal(&d)?;
                println!("PHI dim={} hopf-ideal={}", phi.space.dim(), hopf_ideal);
                Ok(true)
            }
            NewmanDir::Psi { obj, sub } => {
                let h = obj.load()?;
                let d = sub_by_elems(&h, &sub)?;
                let phi = newman_phi(&d)?;
                let back = newman_psi(&phi)?;
                let roundtrip = back.space == d.space;
                println!("PSI dim={} roundtrip={}", back.dim(), roundtrip);
                Ok(roundtrip)
            }
        },
        Cmd::Normal { obj, sub, diagonal } => {
            let h = obj.load()?;
            if diagonal {
                let verdict = diagonal_normal(&h)?;
                println!("NORMAL diagonal={verdict}");
                Ok(verdict)
            } else {
                let Some(elems) = sub else {
                    return Err(CliError::Arg("normal needs --sub or --diagonal".into()));
                };
                let d = sub_by_elems(&h, &elems)?;
                let verdict = is_normal(&d)?;
                println!("NORMAL sub-dim={} normal={verdict}", d.dim());
                Ok(verdict)
            }
        }
        Cmd::Commutator { obj, sub, sub2 } => {
            let h = obj.load()?;
            let x = sub_by_elems(&h, &sub)?;
            let y = sub_by_elems(&h, &sub2)?;
            let w = huq_commutator(&x, &y)?;
            let cc = commute_check(&x, &y)?;
            println!(
                "COMMUTATOR dim={} trivial={} commute-elementwise={} commute-sweedler={}",
                w.closure.dim(),
                w.closure.is_trivial(),
                cc.elementwise,
                cc.sweedler
            );
            if is_normal(&w.closure)? {
                let q = quotient_by_normal(&w.closure)?;
                println!("QUOTIENT dim={}", q.quotient.dim());
            }
            Ok(true)
        }
        Cmd::Abelianize { obj } => {
            let h = obj.load()?;
            let ab = abelianization(&h)?;
            let commutative = hopfcat_core::hopf::is_commutative(&ab.ab.eval());
            println!(
                "ABELIANIZATION dim={} commutative={} proj-surjective={}",
                ab.ab.dim(),
                commutative,
                ab.proj.is_surjective()
            );
            Ok(commutative)
        }
        Cmd::Smash { fixture, hom, section, field } => {
            let field = catalog::parse_field(&field)?;
            if let Some(spec) = fixture {
                let cm = parse_fixture(&spec, field)?;
                let (sp, _) = graph_of_crossed(&cm)?;
                println!("SMASH dim={} name={}", sp.product.dim(), sp.product.name);
                Ok(true)
            } else {
                let (Some(hom), Some(section)) = (hom, section) else {
                    return Err(CliError::Arg(
                        "smash needs --fixture, or --hom with --section".into(),
                    ));
                };
                let rh = catalog::parse_hom(&hom, field)?;
                let sec = catalog::parse_elems(&section)?;
                let smor = group_hom_morphism(
                    &rh.target,
                    &rh.source,
                    &rh.target_table,
                    &rh.source_table,
                    &sec,
                )?;
                let hk = hkernel(&rh.morphism)?;
                let (_, incl) = hk.object(format!("HKer({hom})"))?;
                let ext = Extension::verified(incl, rh.morphism.clone(), Some(smor))?;
                let dec = split_epi_to_action(&ext)?;
                let five = check_split_short_five(
                    &ext,
                    &ext,
                    &HopfMorphism::identity(ext.kernel_object()),
                    &HopfMorphism::identity(ext.middle()),
                    &HopfMorphism::identity(ext.base()),
                )?;
                let ok = dec.phi.is_isomorphism() && dec.psi.is_isomorphism() && five;
                println!(
                    "SMASH dim={} phi-iso={} psi-iso={} short-five={}",
                    dec.smash.product.dim(),
                    dec.phi.is_isomorphism(),
                    dec.psi.is_isomorphism(),
                    five
                );
                Ok(ok)
            }
        }
        Cmd::Xmod { op } => match op {
            XmodOp::Check { fixture, graph, field } => {
                let field = catalog::parse_field(&field)?;
                if let Some(spec) = fixture {
                    let cm = parse_fixture(&spec, field)?;
                    let report = check_crossed_module(&cm)?;
                    report_failures(&report);
                    println!(
                        "XMOD checks={} ok={}",
                        report.checks.len(),
                        report.passed()
                    );
                    Ok(report.passed())
                } else {
                    let Some(spec) = graph else {
                        return Err(CliError::Arg("xmod check needs --fixture or --graph".into()));
                    };
                    let g = parse_graph(&spec, field)?;
                    let gs = canonical_structure(&g)?;
                    let report = check_groupoid(&gs)?;
                    report_failures(&report);
                    let v = equivalence_verdicts(&g)?;
                    println!(
                        "GRAPH multiplicative={} groupoid={} commutator-trivial={} cat1={}",
                        v.multiplicative, v.groupoid, v.commutator_trivial, v.cat1
                    );
                    Ok(v.unanimous() == Some(true))
                }
            }
            XmodOp::ToCat1 { fixture, field } => {
                let field = catalog::parse_field(&field)?;
                let cm = parse_fixture(&fixture, field)?;
                let gs = crossed_to_cat1(&cm)?;
                println!(
                    "CAT1 arrows-dim={} objects-dim={} composable-dim={}",
                    gs.graph.a1.dim(),
                    gs.graph.a0.dim(),
                    gs.composable.object.dim()
                );
                Ok(true)
            }
            XmodOp::FromCat1 { graph, field } => {
                let field = catalog::parse_field(&field)?;
                let g = parse_graph(&graph, field)?;
                let cm = cat1_to_crossed(&g)?;
                println!(
                    "XMOD carrier-dim={} base-dim={}",
                    cm.action.carrier.dim(),
                    cm.action.acting.dim()
                );
                Ok(true)
            }
            XmodOp::Roundtrip { fixture, graph, field } => {
                let field = catalog::parse_field(&field)?;
                if let Some(spec) = fixture {
                    let cm = parse_fixture(&spec, field)?;
                    let gs = crossed_to_cat1(&cm)?;
                    let back = cat1_to_crossed(&gs.graph)?;
                    let iso = crossed_isomorphic(&cm, &back)?;
                    println!("ROUNDTRIP crossed-isomorphic={iso}");
                    Ok(iso)
                } else {
                    let Some(spec) = graph else {
                        return Err(CliError::Arg(
                            "xmod roundtrip needs --fixture or --graph".into(),
                        ));
                    };
                    let g = parse_graph(&spec, field)?;
                    let cm = cat1_to_crossed(&g)?;
                    let g2 = crossed_to_cat1(&cm)?;
                    let iso = graphs_isomorphic(&g, &g2.graph)?;
                    println!("ROUNDTRIP graphs-isomorphic={iso}");
                    Ok(iso)
                }
            }
        },
        Cmd::Dual { obj } => {
            let h = obj.load()?;
            let d = dual_fd(&h)?;
            let report = check_hopf_axioms(&d)?;
            report_failures(&report);
            println!("DUAL name={} dim={} ok={}", d.name, d.dim(), report.passed());
            Ok(report.passed())
        }
        Cmd::Suite { seed, groups, fields, max_dim, inject } => {
            let mut cfg = SuiteConfig::default();
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(list) = groups {
                cfg.groups = list.split(',').map(|s| s.trim().to_string()).collect();
            }
            if let Some(list) = fields {
                cfg.fields = list
                    .split(',')
                    .map(|s| catalog::parse_field(s.trim()))
                    .collect::<CliResult<Vec<_>>>()?;
            }
            if let Some(d) = max_dim {
                cfg.max_dim = d;
            }
            if let Some(name) = inject {
                cfg.inject = Some(name.parse::<Injection>()?);
            }
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            run_suite(&cfg, &mut lock)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.cmd) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
