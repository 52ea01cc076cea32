//! Turning command-line shorthand into engine objects: field specs
//! (`Q`, `Fp:5`), catalog group names, element lists, and homomorphism
//! specs of the form `S3>C2:0,0,0,1,1,1`.

use std::path::Path;

use hopfcat_core::construct::{group_algebra, hopf_from_group_hom};
use hopfcat_core::field::FieldSpec;
use hopfcat_core::groups::{self, FiniteGroupTable};
use hopfcat_core::hopf::{Hopf, HopfMorphism};

use crate::{format, CliError, CliResult};

pub fn parse_field(s: &str) -> CliResult<FieldSpec> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| CliError::Arg(format!("bad prime in field spec {s:?}")))?;
        return FieldSpec::prime(p).map_err(|_| CliError::Arg(format!("{p} is not prime")));
    }
    Err(CliError::Arg(format!(
        "field must be Q or Fp:<prime>, got {s:?}"
    )))
}

pub fn group(name: &str) -> CliResult<FiniteGroupTable> {
    groups::by_name(name).map_err(|_| {
        CliError::Arg(format!(
            "unknown group {name:?}; catalog: {}",
            groups::CATALOG.join(", ")
        ))
    })
}

pub fn group_hopf(name: &str, field: FieldSpec) -> CliResult<Hopf> {
    Ok(group_algebra(field, &group(name)?)?)
}

/// Loads the working object: an explicit file wins, otherwise a catalog name.
pub fn load(file: Option<&str>, group_name: Option<&str>, field: FieldSpec) -> CliResult<Hopf> {
    match (file, group_name) {
        (Some(path), _) => format::parse_hopf(Path::new(path)),
        (None, Some(name)) => group_hopf(name, field),
        (None, None) => Err(CliError::Arg(
            "provide --file PATH or --group NAME".into(),
        )),
    }
}

pub fn parse_elems(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Arg(format!("bad element index {t:?}")))
        })
        .collect()
}

pub struct ResolvedHom {
    pub source_table: FiniteGroupTable,
    pub target_table: FiniteGroupTable,
    pub map: Vec<usize>,
    pub source: Hopf,
    pub target: Hopf,
    pub morphism: HopfMorphism,
}

/// `SRC>TGT:i0,i1,…` — a group homomorphism by element images, lifted to the
/// group algebras over `field`. Rejected unless it really is a homomorphism.
pub fn parse_hom(spec: &str, field: FieldSpec) -> CliResult<ResolvedHom> {
    let (names, images) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Arg(format!("hom spec {spec:?} needs SRC>TGT:images")))?;
    let (src, tgt) = names
        .split_once('>')
        .ok_or_else(|| CliError::Arg(format!("hom spec {spec:?} needs SRC>TGT:images")))?;
    let source_table = group(src)?;
    let target_table = group(tgt)?;
    let map = parse_elems(images)?;
    if map.len() != source_table.order() {
        return Err(CliError::Arg(format!(
            "hom spec maps {} elements, {} has order {}",
            map.len(),
            src,
            source_table.order()
        )));
    }
    let (source, target, morphism) = hopf_from_group_hom(field, &source_table, &target_table, &map)?;
    Ok(ResolvedHom {
        source_table,
        target_table,
        map,
        source,
        target,
        morphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs_parse_and_reject() {
        assert_eq!(parse_field("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_field("Fp:7").unwrap(), FieldSpec::Prime(7));
        assert!(parse_field("Fp:6").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn hom_spec_resolves_the_sign_map() {
        let h = parse_hom("S3>C2:0,0,0,1,1,1", FieldSpec::Rationals).unwrap();
        assert_eq!(h.source.dim(), 6);
        assert_eq!(h.target.dim(), 2);
        assert!(h.morphism.is_surjective());
        assert!(parse_hom("S3>C2:0,0,0,1,1,0", FieldSpec::Rationals).is_err());
    }

    #[test]
    fn unknown_group_names_the_catalog() {
        let err = group("A5").unwrap_err();
        assert!(err.to_string().contains("S3"));
        assert_eq!(err.exit_code(), 2);
    }
}
