use std::io::Write;
use std::process::Command;

use bvinf_cli::{parse_rational, run, Fixture, Outcome, ProblemFile};
use clap::ValueEnum;

fn bvinf(args: &[&str]) -> Outcome {
    run(std::iter::once("bvinf").chain(args.iter().copied()))
}

fn problem_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn with_file(args: &[&str], json: &str) -> Outcome {
    let f = problem_file(json);
    let path = f.path().to_str().unwrap().to_string();
    let mut all: Vec<&str> = args.to_vec();
    all.push(&path);
    bvinf(&all)
}

const PAIRED: &str = r#"{
  "version": 1,
  "problem": {
    "kind": "algebra-operator",
    "algebra": { "type": "exterior", "generators": 2 },
    "operator": { "parity": 1, "entries": [[1, 3, "1"]] }
  }
}"#;

#[test]
fn abelian_ce_checks_out() {
    let out = bvinf(&["check", "--fixture", "abelian3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("check: passed"));
}

#[test]
fn heisenberg_degeneration_fails_at_two() {
    let out = bvinf(&["degeneration", "--fixture", "heisenberg", "--n-max", "2"]);
    assert_eq!(out.code, 0);
    assert!(
        out.stdout.contains("N=2 free: false, dim 14 vs 16"),
        "{}",
        out.stdout
    );
}

#[test]
fn main_theorem_on_fixtures() {
    let out = bvinf(&[
        "main-theorem",
        "--fixture",
        "abelian3",
        "--format",
        "machine",
    ]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["degenerate"], true);
    assert_eq!(v["report"]["homotopy_abelian"], true);
    let out = bvinf(&[
        "main-theorem",
        "--fixture",
        "heisenberg",
        "--n-max",
        "2",
        "--format",
        "machine",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["degenerate"], false);
    assert_eq!(v["report"]["consistent"], true);
    assert_eq!(
        v["report"]["minimal_model"]["m2"][0]["inputs"],
        serde_json::json!(["w1", "w2"])
    );
}

#[test]
fn koszul_bracket_fixtures() {
    let out = bvinf(&[
        "brackets",
        "--fixture",
        "r2-linear-poisson",
        "--input",
        "dx1",
        "--input",
        "dx2",
    ]);
    assert!(out.stdout.contains("value: dx1"), "{}", out.stdout);
    let out = bvinf(&[
        "brackets",
        "--fixture",
        "r4-generalized",
        "--input",
        "dx1",
        "--input",
        "dx2",
        "--input",
        "dx3",
        "--input",
        "dx4",
    ]);
    assert!(out.stdout.contains("value: -dx1"), "{}", out.stdout);
    let out = bvinf(&["check", "--fixture", "r2-linear-poisson", "--n-max", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn sl2_is_not_homotopy_abelian() {
    let out = bvinf(&[
        "transfer",
        "--fixture",
        "sl2",
        "--arity-cap",
        "3",
        "--format",
        "machine",
    ]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["homotopy_abelian"], false);
    assert_eq!(v["report"]["homology_dim"], 3);
}

#[test]
fn zero_denominator_is_an_input_error() {
    let json = PAIRED.replace("\"1\"]]", "\"1/0\"]]");
    let out = with_file(&["check"], &json);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("zero denominator"));
    assert!(parse_rational("3/-4").is_err());
    assert!(parse_rational("1.5").is_err());
    assert_eq!(parse_rational("-6/4").unwrap().to_string(), "-3/2");
}

#[test]
fn schema_errors_exit_two() {
    assert_eq!(
        with_file(
            &["check"],
            &PAIRED.replace("\"version\": 1", "\"version\": 2")
        )
        .code,
        2
    );
    assert_eq!(
        with_file(
            &["check"],
            &PAIRED.replace("\"parity\": 1", "\"parity\": 1, \"extra\": 0")
        )
        .code,
        2
    );
    assert_eq!(
        with_file(
            &["check"],
            &PAIRED.replace("\"parity\": 1", "\"parity\": 3")
        )
        .code,
        2
    );
    assert_eq!(with_file(&["check"], "not json").code, 2);
    assert_eq!(bvinf(&["check"]).code, 2);
    assert_eq!(bvinf(&["check", "/nonexistent/problem.json"]).code, 2);
    assert_eq!(bvinf(&["frobnicate"]).code, 2);
    assert_eq!(bvinf(&["--help"]).code, 0);
}

#[test]
fn mathematical_failures_exit_one() {
    // D(θ₁θ₂) = θ₁, D(θ₁) = 1 squares to a nonzero map
    let curved = PAIRED.replace("[[1, 3, \"1\"]]", "[[1, 3, \"1\"], [0, 1, \"1\"]]");
    let out = with_file(&["check", "--format", "machine"], &curved);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["square_zero"], false);
    assert_eq!(v["report"]["relation_witness"]["arity"], 1);

    let not_lie = r#"{"version": 1, "problem": {"kind": "lie-data", "dim": 3,
        "constants": [[0, 1, 1, "1"], [1, 2, 2, "1"]]}}"#;
    assert_eq!(with_file(&["check"], not_lie).code, 1);
    assert_eq!(with_file(&["transfer"], not_lie).code, 1);

    let not_poisson = r#"{"version": 1, "problem": {"kind": "poisson-geometry", "nvars": 3,
        "p": "x3*@1^@2 + x2*@2^@3"}}"#;
    let out = with_file(&["check", "--format", "machine"], not_poisson);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["square"], "2*x3*@1^@2^@3");
    assert_eq!(
        with_file(
            &["brackets", "--input", "dx1", "--input", "dx2"],
            not_poisson
        )
        .code,
        1
    );
}

#[test]
fn odd_multivector_is_rejected() {
    let odd =
        r#"{"version": 1, "problem": {"kind": "poisson-geometry", "nvars": 3, "p": "@1^@2^@3"}}"#;
    assert_eq!(with_file(&["check"], odd).code, 2);
}

#[test]
fn bv_family_round() {
    // D₀ = 0, D₁ = θ₁∂₁∂₂ up to sign: h-torsion at N = 2
    let family = r#"{"version": 1, "problem": {"kind": "bv-family",
        "algebra": {"type": "exterior", "generators": 2}, "trunc": 3,
        "components": [[], [[1, 3, "1"]]]}}"#;
    let out = with_file(&["check"], family);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let out = with_file(&["degeneration", "--format", "machine"], family);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["degenerate"], false);
    assert_eq!(v["report"]["e1_collapse"], false);
    assert_eq!(v["report"]["n_max"], 3);
    let out = with_file(&["main-theorem"], family);
    assert_eq!(out.code, 0);
    let out = with_file(&["brackets", "--input", "θ1", "--input", "θ2"], family);
    assert_eq!(out.code, 0);
}

#[test]
fn mc_is_deterministic() {
    let a = with_file(
        &["mc", "--seed", "7", "--cdga", "2", "--format", "machine"],
        PAIRED,
    );
    let b = with_file(
        &["mc", "--seed", "7", "--cdga", "2", "--format", "machine"],
        PAIRED,
    );
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    // ε ⊗ θ₁θ₂ is even and in the ideal
    let out = with_file(&["mc", "--cdga", "0", "--element", "1:3:2/3"], PAIRED);
    assert_eq!(out.code, 0, "{}", out.stderr);
    // ε ⊗ θ₁ is odd
    assert_eq!(
        with_file(&["mc", "--cdga", "0", "--element", "1:1:1"], PAIRED).code,
        2
    );
    assert_eq!(with_file(&["mc", "--cdga", "99"], PAIRED).code, 2);
}

#[test]
fn problem_files_round_trip() {
    for f in Fixture::value_variants() {
        let p = f.problem();
        let text = p.to_json();
        let parsed = ProblemFile::parse(&text).unwrap();
        assert_eq!(parsed, p);
        assert_eq!(parsed.to_json(), text);
        assert_eq!(
            bvinf(&["fixture", f.to_possible_value().unwrap().get_name()]).stdout,
            text
        );
    }
    let parsed = ProblemFile::parse(PAIRED).unwrap();
    assert_eq!(ProblemFile::parse(&parsed.to_json()).unwrap(), parsed);
}

#[test]
fn binary_reports_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_bvinf");
    let ok = Command::new(exe)
        .args(["check", "--fixture", "heisenberg", "--format", "machine"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let again = Command::new(exe)
        .args(["check", "--fixture", "heisenberg", "--format", "machine"])
        .output()
        .unwrap();
    assert_eq!(ok.stdout, again.stdout);
    let bad = Command::new(exe)
        .args(["check", "--fixture", "nope"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
