//! On-disk JSON format for Hopf algebra structure constants.
//!
//! Canonical layout, in this exact key order:
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "name": "K[S3]",
//!   "field": {"kind": "Q"},            // or {"kind": "Fp", "p": 5}
//!   "dim": 6,
//!   "mult": [[i, j, k, num, den], …],  // coefficient of e_i in e_j·e_k
//!   "unit": [[num, den], …],           // dense, dim entries
//!   "comult": [[i, j, k, num, den], …],// coefficient of e_i⊗e_j in Δ(e_k)
//!   "counit": [[num, den], …],         // dense, dim entries
//!   "antipode": [[i, j, num, den], …]  // coefficient of e_i in S(e_j)
//! }
//! ```
//!
//! Over ℚ every coefficient is a `[numerator, denominator]` pair in lowest
//! terms with positive denominator; over 𝔽p denominators are absent — sparse
//! entries shrink by one slot and dense entries are plain residues `0 ≤ r < p`.
//! Sparse entries carry only nonzero coefficients and are sorted
//! lexicographically by index, so `serialize(parse(f)) == f` byte for byte on
//! canonical files. Parsing validates the full axiom battery; a file that is
//! shaped correctly but mathematically broken is reported with the failing
//! axiom's name and witness indices.

use std::fmt::Write as _;
use std::path::Path;

use hopfcat_core::field::{rational_parts, FieldSpec, Scalar};
use hopfcat_core::hopf::{check_hopf_axioms, Hopf, HopfAlgebra};
use hopfcat_core::matrix::Matrix;
use num_bigint::{BigInt, Sign};
use serde_json::Value;

use crate::{CliError, CliResult};

pub const FORMAT_VERSION: &str = "1";

pub fn parse_hopf(path: &Path) -> CliResult<Hopf> {
    let text = std::fs::read_to_string(path)?;
    parse_hopf_str(&text, &path.display().to_string())
}

pub fn write_hopf(h: &Hopf, path: &Path) -> CliResult<()> {
    std::fs::write(path, serialize_hopf(h))?;
    Ok(())
}

pub fn parse_hopf_str(text: &str, origin: &str) -> CliResult<Hopf> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Syntax {
        path: origin.to_string(),
        detail: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| file_err("top level must be an object"))?;
    const KEYS: [&str; 9] = [
        "format_version",
        "name",
        "field",
        "dim",
        "mult",
        "unit",
        "comult",
        "counit",
        "antipode",
    ];
    for key in obj.keys() {
        if !KEYS.contains(&key.as_str()) {
            return Err(file_err(&format!("unknown key {key:?}")));
        }
    }

    let version = get(obj, "format_version")?
        .as_str()
        .ok_or_else(|| file_err("format_version must be a string"))?;
    if version != FORMAT_VERSION {
        return Err(CliError::Version(version.to_string()));
    }
    let name = get(obj, "name")?
        .as_str()
        .ok_or_else(|| file_err("name must be a string"))?
        .to_string();
    let field = parse_field_value(get(obj, "field")?)?;
    let dim = as_usize(get(obj, "dim")?, "dim")?;
    if dim == 0 {
        return Err(file_err("dim must be positive"));
    }

    let mult = parse_sparse3(
        get(obj, "mult")?,
        "mult",
        field,
        dim,
        (dim, dim * dim),
        |i, j, k| (i, j * dim + k),
    )?;
    let comult = parse_sparse3(
        get(obj, "comult")?,
        "comult",
        field,
        dim,
        (dim * dim, dim),
        |i, j, k| (i * dim + j, k),
    )?;
    let unit = parse_dense(get(obj, "unit")?, "unit", field, dim)?;
    let counit = parse_dense(get(obj, "counit")?, "counit", field, dim)?;
    let antipode = parse_sparse2(get(obj, "antipode")?, "antipode", field, dim)?;

    let mut unit_col = Matrix::zeros(field, dim, 1);
    let mut counit_row = Matrix::zeros(field, 1, dim);
    for (i, c) in unit.into_iter().enumerate() {
        unit_col[(i, 0)] = c;
    }
    for (i, c) in counit.into_iter().enumerate() {
        counit_row[(0, i)] = c;
    }

    let h = HopfAlgebra::new(
        field,
        dim,
        mult,
        unit_col,
        comult,
        counit_row,
        antipode,
        name.clone(),
    )?;
    let report = check_hopf_axioms(&h)?;
    if !report.passed() {
        return Err(CliError::Core(hopfcat_core::Error::AxiomsFailed {
            subject: name,
            report,
        }));
    }
    Ok(h.share())
}

pub fn serialize_hopf(h: &Hopf) -> String {
    let field = h.field();
    let d = h.dim();
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"format_version\": \"{FORMAT_VERSION}\",\n"));
    out.push_str(&format!(
        "  \"name\": {},\n",
        serde_json::to_string(&h.name).expect("string serializes")
    ));
    match field {
        FieldSpec::Rationals => out.push_str("  \"field\": {\"kind\": \"Q\"},\n"),
        FieldSpec::Prime(p) => {
            out.push_str(&format!("  \"field\": {{\"kind\": \"Fp\", \"p\": {p}}},\n"))
        }
    }
    out.push_str(&format!("  \"dim\": {d},\n"));

    write_sparse_block(&mut out, "mult", sparse3_entries(&h.mult, |r, c| (r, c / d, c % d)));
    out.push_str(",\n");
    write_dense_block(&mut out, "unit", (0..d).map(|i| h.unit[(i, 0)].clone()));
    out.push_str(",\n");
    write_sparse_block(
        &mut out,
        "comult",
        sparse3_entries(&h.comult, |r, c| (r / d, r % d, c)),
    );
    out.push_str(",\n");
    write_dense_block(&mut out, "counit", (0..d).map(|i| h.counit[(0, i)].clone()));
    out.push_str(",\n");
    write_sparse2_block(&mut out, "antipode", &h.antipode);
    out.push_str("\n}\n");
    out
}

// ---------------------------------------------------------------------------
// Parsing pieces
// ---------------------------------------------------------------------------

fn file_err(msg: &str) -> CliError {
    CliError::File(msg.to_string())
}

fn get<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> CliResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| file_err(&format!("missing key {key:?}")))
}

fn parse_field_value(v: &Value) -> CliResult<FieldSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| file_err("field must be an object"))?;
    let kind = get(obj, "kind")?
        .as_str()
        .ok_or_else(|| file_err("field.kind must be a string"))?;
    match kind {
        "Q" => {
            if obj.len() != 1 {
                return Err(file_err("field of kind Q takes no further keys"));
            }
            Ok(FieldSpec::Rationals)
        }
        "Fp" => {
            if obj.len() != 2 {
                return Err(file_err("field of kind Fp takes exactly the key p"));
            }
            let p = as_u64(get(obj, "p")?, "field.p")?;
            FieldSpec::prime(p).map_err(CliError::Core)
        }
        other => Err(file_err(&format!("unknown field kind {other:?}"))),
    }
}

fn as_bigint(v: &Value, what: &str) -> CliResult<BigInt> {
    let n = v
        .as_number()
        .ok_or_else(|| file_err(&format!("{what} must be an integer")))?;
    n.to_string()
        .parse::<BigInt>()
        .map_err(|_| file_err(&format!("{what} must be an integer, got {n}")))
}

fn as_u64(v: &Value, what: &str) -> CliResult<u64> {
    v.as_u64()
        .ok_or_else(|| file_err(&format!("{what} must be a non-negative machine integer")))
}

fn as_usize(v: &Value, what: &str) -> CliResult<usize> {
    Ok(as_u64(v, what)? as usize)
}

fn index_in(v: &Value, what: &str, dim: usize) -> CliResult<usize> {
    let i = as_usize(v, what)?;
    if i >= dim {
        return Err(file_err(&format!(
            "{what} index {i} out of range for dimension {dim}"
        )));
    }
    Ok(i)
}

/// One coefficient occupying `width` slots of an entry row: `[num, den]`
/// over ℚ, a single residue over 𝔽p.
fn coefficient(entry: &[Value], at: usize, what: &str, field: FieldSpec) -> CliResult<Scalar> {
    match field {
        FieldSpec::Rationals => {
            let num = as_bigint(&entry[at], what)?;
            let den = as_bigint(&entry[at + 1], what)?;
            if den.sign() != Sign::Plus {
                return Err(file_err(&format!("{what}: denominator must be positive")));
            }
            Scalar::from_big_ratio(num, den).map_err(CliError::Core)
        }
        FieldSpec::Prime(p) => {
            let r = as_u64(&entry[at], what)?;
            if r >= u64::from(p) {
                return Err(file_err(&format!(
                    "{what}: residue {r} out of range for F{p}"
                )));
            }
            Ok(Scalar::from_int(field, r as i64))
        }
    }
}

fn coeff_width(field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => 2,
        FieldSpec::Prime(_) => 1,
    }
}

fn parse_sparse3(
    v: &Value,
    what: &str,
    field: FieldSpec,
    dim: usize,
    shape: (usize, usize),
    place: impl Fn(usize, usize, usize) -> (usize, usize),
) -> CliResult<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| file_err(&format!("{what} must be an array")))?;
    let mut m = Matrix::zeros(field, shape.0, shape.1);
    let mut seen = std::collections::BTreeSet::new();
    for entry in rows {
        let entry = entry
            .as_array()
            .ok_or_else(|| file_err(&format!("{what} entries must be arrays")))?;
        if entry.len() != 3 + coeff_width(field) {
            return Err(file_err(&format!(
                "{what} entries must have {} slots",
                3 + coeff_width(field)
            )));
        }
        let i = index_in(&entry[0], what, dim)?;
        let j = index_in(&entry[1], what, dim)?;
        let k = index_in(&entry[2], what, dim)?;
        if !seen.insert((i, j, k)) {
            return Err(file_err(&format!("{what}: duplicate entry [{i}, {j}, {k}]")));
        }
        let c = coefficient(entry, 3, what, field)?;
        if c.is_zero() {
            return Err(file_err(&format!("{what}: explicit zero at [{i}, {j}, {k}]")));
        }
        let (r, col) = place(i, j, k);
        m[(r, col)] = c;
    }
    Ok(m)
}

fn parse_sparse2(v: &Value, what: &str, field: FieldSpec, dim: usize) -> CliResult<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| file_err(&format!("{what} must be an array")))?;
    let mut m = Matrix::zeros(field, dim, dim);
    let mut seen = std::collections::BTreeSet::new();
    for entry in rows {
        let entry = entry
            .as_array()
            .ok_or_else(|| file_err(&format!("{what} entries must be arrays")))?;
        if entry.len() != 2 + coeff_width(field) {
            return Err(file_err(&format!(
                "{what} entries must have {} slots",
                2 + coeff_width(field)
            )));
        }
        let i = index_in(&entry[0], what, dim)?;
        let j = index_in(&entry[1], what, dim)?;
        if !seen.insert((i, j)) {
            return Err(file_err(&format!("{what}: duplicate entry [{i}, {j}]")));
        }
        let c = coefficient(entry, 2, what, field)?;
        if c.is_zero() {
            return Err(file_err(&format!("{what}: explicit zero at [{i}, {j}]")));
        }
        m[(i, j)] = c;
    }
    Ok(m)
}

fn parse_dense(v: &Value, what: &str, field: FieldSpec, dim: usize) -> CliResult<Vec<Scalar>> {
    let arr = v
        .as_array()
        .ok_or_else(|| file_err(&format!("{what} must be an array")))?;
    if arr.len() != dim {
        return Err(file_err(&format!(
            "{what} must list exactly {dim} coefficients"
        )));
    }
    arr.iter()
        .map(|entry| match field {
            FieldSpec::Rationals => {
                let pair = entry
                    .as_array()
                    .ok_or_else(|| file_err(&format!("{what} entries must be [num, den]")))?;
                if pair.len() != 2 {
                    return Err(file_err(&format!("{what} entries must be [num, den]")));
                }
                coefficient(pair, 0, what, field)
            }
            FieldSpec::Prime(_) => coefficient(std::slice::from_ref(entry), 0, what, field),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Serialization pieces
// ---------------------------------------------------------------------------

fn coeff_slots(s: &Scalar) -> String {
    match s {
        Scalar::Mod { value, .. } => value.to_string(),
        rat => {
            let (num, den) = rational_parts(rat).expect("rational scalar");
            format!("{num}, {den}")
        }
    }
}

fn sparse3_entries(
    m: &Matrix,
    unplace: impl Fn(usize, usize) -> (usize, usize, usize),
) -> Vec<(usize, usize, usize, Scalar)> {
    let mut entries = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = &m[(r, c)];
            if !v.is_zero() {
                let (i, j, k) = unplace(r, c);
                entries.push((i, j, k, v.clone()));
            }
        }
    }
    entries.sort_by_key(|&(i, j, k, _)| (i, j, k));
    entries
}

fn write_sparse_block(out: &mut String, key: &str, entries: Vec<(usize, usize, usize, Scalar)>) {
    if entries.is_empty() {
        let _ = write!(out, "  \"{key}\": []");
        return;
    }
    let _ = write!(out, "  \"{key}\": [\n");
    for (n, (i, j, k, c)) in entries.iter().enumerate() {
        let sep = if n + 1 == entries.len() { "" } else { "," };
        let _ = write!(out, "    [{i}, {j}, {k}, {}]{sep}\n", coeff_slots(c));
    }
    let _ = write!(out, "  ]");
}

fn write_sparse2_block(out: &mut String, key: &str, m: &Matrix) {
    let mut entries = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = &m[(i, j)];
            if !v.is_zero() {
                entries.push((i, j, v.clone()));
            }
        }
    }
    entries.sort_by_key(|&(i, j, _)| (i, j));
    if entries.is_empty() {
        let _ = write!(out, "  \"{key}\": []");
        return;
    }
    let _ = write!(out, "  \"{key}\": [\n");
    for (n, (i, j, c)) in entries.iter().enumerate() {
        let sep = if n + 1 == entries.len() { "" } else { "," };
        let _ = write!(out, "    [{i}, {j}, {}]{sep}\n", coeff_slots(c));
    }
    let _ = write!(out, "  ]");
}

fn write_dense_block(out: &mut String, key: &str, coeffs: impl Iterator<Item = Scalar>) {
    let parts: Vec<String> = coeffs
        .map(|c| match c {
            Scalar::Mod { value, .. } => value.to_string(),
            rat => {
                let (num, den) = rational_parts(&rat).expect("rational scalar");
                format!("[{num}, {den}]")
            }
        })
        .collect();
    let _ = write!(out, "  \"{key}\": [{}]", parts.join(", "));
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfcat_core::construct::group_algebra;
    use hopfcat_core::groups;

    #[test]
    fn round_trip_is_byte_exact_over_q_and_fp() {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(5)] {
            let h = group_algebra(field, &groups::dihedral(3)).unwrap();
            let text = serialize_hopf(&h);
            let back = parse_hopf_str(&text, "mem").unwrap();
            assert_eq!(serialize_hopf(&back), text);
            assert_eq!(back.mult, h.mult);
            assert_eq!(back.comult, h.comult);
            assert_eq!(back.antipode, h.antipode);
        }
    }

    #[test]
    fn version_mismatch_is_reported() {
        let h = group_algebra(FieldSpec::Rationals, &groups::cyclic(2)).unwrap();
        let text = serialize_hopf(&h).replace("\"format_version\": \"1\"", "\"format_version\": \"2\"");
        assert!(matches!(
            parse_hopf_str(&text, "mem"),
            Err(CliError::Version(v)) if v == "2"
        ));
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_hopf_str("{\n  \"format_version\": \"1\",,\n}", "mem").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn broken_counit_is_an_axiom_failure_with_a_name() {
        let h = group_algebra(FieldSpec::Rationals, &groups::cyclic(2)).unwrap();
        // Zero out the counit: ε(1) = 0 violates the counit laws.
        let text = serialize_hopf(&h).replace("\"counit\": [[1, 1], [1, 1]]", "\"counit\": [[0, 1], [0, 1]]");
        let err = parse_hopf_str(&text, "mem").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        let msg = err.to_string();
        assert!(msg.contains("counit"), "{msg}");
    }

    #[test]
    fn out_of_range_index_and_duplicates_are_input_errors() {
        let h = group_algebra(FieldSpec::Rationals, &groups::cyclic(2)).unwrap();
        let good = serialize_hopf(&h);
        let bad_index = good.replace("[0, 0, 0, 1, 1]", "[0, 9, 0, 1, 1]");
        let err = parse_hopf_str(&bad_index, "mem").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        // Same triple twice in the antipode block.
        let dup = good.replace("[0, 0, 1, 1],", "[0, 0, 1, 1],\n    [0, 0, 1, 1],");
        let err = parse_hopf_str(&dup, "mem").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn fp_entries_have_no_denominator_slot() {
        let h = group_algebra(FieldSpec::Prime(3), &groups::cyclic(3)).unwrap();
        let text = serialize_hopf(&h);
        assert!(text.contains("\"unit\": [1, 0, 0]"), "{text}");
        // A 5-slot mult entry over Fp must be rejected.
        let bad = text.replace("[0, 0, 0, 1]", "[0, 0, 0, 1, 1]");
        assert!(parse_hopf_str(&bad, "mem").is_err());
    }
}
