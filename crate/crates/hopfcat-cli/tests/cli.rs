//! End-to-end tests of the `hopfcat` binary: exit codes, determinism of the
//! suite output, fault injection, and the canonical file round trip.

use std::process::{Command, Output};

fn hopfcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcat"))
        .args(args)
        .env_remove("HOPFCAT_SEED")
        .output()
        .expect("binary runs")
}

fn hopfcat_with_seed(args: &[&str], seed: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcat"))
        .args(args)
        .env("HOPFCAT_SEED", seed)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_of_a_catalog_group_exits_zero() {
    let o = hopfcat(&["check", "--group", "Q8", "--field", "Fp:3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("ok=true"));
}

#[test]
fn dump_and_reparse_are_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("d4.json");
    let second = dir.path().join("d4-again.json");
    let o = hopfcat(&[
        "check", "--group", "D4", "--field", "Fp:5",
        "--out", first.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = hopfcat(&[
        "check", "--file", first.to_str().unwrap(),
        "--out", second.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ \"format_version\": \"1\", ").unwrap();
    let o = hopfcat(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("syntax error"));
}

#[test]
fn axiom_violating_file_exits_one_and_names_the_axiom() {
    // A one-dimensional algebra whose counit sends the unit to 2.
    let text = r#"{
  "format_version": "1",
  "name": "bad-counit",
  "field": { "kind": "Q" },
  "dim": 1,
  "mult": [[0, 0, 0, 1, 1]],
  "unit": [[1, 1]],
  "comult": [[0, 0, 0, 1, 1]],
  "counit": [[2, 1]],
  "antipode": [[0, 0, 1, 1]]
}
"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, text).unwrap();
    let o = hopfcat(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("counit"), "{}", stderr(&o));
}

#[test]
fn unknown_group_is_an_input_error() {
    let o = hopfcat(&["kernel", "--hom", "A5>C2:0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("A5"));
}

#[test]
fn suite_output_is_byte_identical_across_runs() {
    let args = ["suite", "--groups", "C2,C3", "--fields", "Q,Fp:3"];
    let o1 = hopfcat(&args);
    let o2 = hopfcat(&args);
    assert_eq!(o1.status.code(), Some(0), "{}", stderr(&o1));
    assert_eq!(o1.stdout, o2.stdout);
    let text = stdout(&o1);
    assert_eq!(text.lines().count(), 20);
    assert!(text.lines().all(|l| l.starts_with("PROP ") && l.ends_with("fail=0")));
}

#[test]
fn antipode_injection_fails_the_suite_with_a_witness() {
    let o = hopfcat(&[
        "suite", "--groups", "C2", "--fields", "Q", "--inject", "antipode",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("PROP axioms-group-algebras cases=1 fail=1"), "{text}");
    assert!(text.contains("WITNESS"), "{text}");
    assert!(text.contains("antipode"), "{text}");
}

#[test]
fn seed_env_overrides_and_stays_deterministic() {
    let args = ["suite", "--groups", "C2", "--fields", "Q", "--seed", "1"];
    let base = hopfcat(&args);
    let o1 = hopfcat_with_seed(&args, "424242");
    let o2 = hopfcat_with_seed(&args, "424242");
    assert_eq!(o1.status.code(), Some(0), "{}", stderr(&o1));
    assert_eq!(o1.stdout, o2.stdout);
    assert_eq!(base.status.code(), Some(0));
    let bad = hopfcat_with_seed(&args, "not-a-number");
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("HOPFCAT_SEED"));
}

#[test]
fn negative_verdicts_exit_one() {
    let o = hopfcat(&["xmod", "check", "--fixture", "peiffer"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("peiffer"));

    let o = hopfcat(&["normal", "--group", "S3", "--sub", "0,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("normal=false"));

    let o = hopfcat(&["normal", "--group", "S3", "--sub", "0,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("normal=true"));
}

#[test]
fn smash_of_a_split_epi_reports_the_isomorphism() {
    let o = hopfcat(&[
        "smash", "--hom", "S3>C2:0,0,0,1,1,1", "--section", "0,3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("dim=6"), "{text}");
    assert!(text.contains("phi-iso=true"), "{text}");
    assert!(text.contains("short-five=true"), "{text}");
}
