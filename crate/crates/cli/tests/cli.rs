use std::io::Write;
use std::process::Command;

use serde_json::{json, Value};
use z2cross_cli::report::{Report, Tolerance};
use z2cross_cli::{run_with_env, Execution};

fn run(args: &[&str]) -> Execution {
    run_with_env(
        std::iter::once("z2cross").chain(args.iter().copied()),
        |_| None,
    )
}

fn results(exec: &Execution) -> Value {
    exec.report().expect("a report").results
}

fn temp_json(v: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

fn m2_file() -> Value {
    let e11 = json!([[[1, 0], [0, 0]], [[0, 0], [0, 0]]]);
    let e12 = json!([[[0, 0], [1, 0]], [[0, 0], [0, 0]]]);
    let minus_e12 = json!([[[0, 0], [-1, 0]], [[0, 0], [0, 0]]]);
    json!({
        "format": 1,
        "name": "M2",
        "ambient_dim": 2,
        "generators": [e11.clone(), e12],
        "automorphism": [e11, minus_e12],
    })
}

#[test]
fn report_round_trips() {
    let r = Report {
        command: vec!["census".into(), "--model".into(), "m2".into()],
        seed: u64::MAX,
        tolerance: Tolerance {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
        },
        results: json!({ "k": ["123456789012345678901234567890"], "x": 0.1 }),
        anchor: "statement".into(),
        violations: vec!["v".into()],
        exit_code: 4,
    };
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    let exec = run(&["census", "--model", "circle-conj", "--n", "5"]);
    let parsed = exec.report().unwrap();
    assert_eq!(Report::from_json(&parsed.to_json()).unwrap(), parsed);
    assert_eq!(parsed.to_json(), exec.stdout.unwrap());
}

#[test]
fn case_beta_reports_k_groups() {
    let exec = run(&["paper", "--case", "beta"]);
    assert_eq!(exec.exit_code, 0, "{}", exec.stderr);
    let r = exec.report().unwrap();
    assert_eq!(r.results["k0"]["free_rank"], 1);
    assert_eq!(r.results["k1"]["free_rank"], 2);
    assert!(r.anchor.contains("K1 = Z^2"));
    assert_eq!(r.exit_code, 0);
}

#[test]
fn mismatching_fixture_is_a_violation() {
    let mut doc: Value = serde_json::from_str(include_str!("../data/fixtures.json")).unwrap();
    doc["cases"]["beta"]["expected"]["k1"]["free_rank"] = json!(3);
    let f = temp_json(&doc);
    let exec = run(&[
        "paper",
        "--case",
        "beta",
        "--fixtures",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(exec.exit_code, 4);
    assert_eq!(exec.report().unwrap().violations.len(), 1);
}

#[test]
fn flip_with_odd_n_is_invalid_input() {
    let exec = run(&["demo", "--model", "circle-flip", "--n", "5"]);
    assert_eq!(exec.exit_code, 2);
    assert!(exec.stderr.contains("not an n-th root of unity for odd n"));
}

#[test]
fn flip_census() {
    let exec = run(&["census", "--model", "circle-flip", "--n", "8"]);
    assert_eq!(exec.exit_code, 0, "{}", exec.stderr);
    let c = &results(&exec)["census"];
    assert_eq!(
        (
            c["type1"].clone(),
            c["type2_split"].clone(),
            c["type2_induced"].clone()
        ),
        (json!(0), json!(0), json!(4))
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["census", "--bogus"][..],
        &["frobnicate"],
        &["verify", "--lemma", "nope"],
        &[],
    ] {
        let exec = run(args);
        assert_eq!(exec.exit_code, 2, "{args:?}");
        assert!(exec.stdout.is_none());
        assert!(
            exec.stderr.contains("Usage") || exec.stderr.contains("--help"),
            "{}",
            exec.stderr
        );
    }
    assert_eq!(run(&["census"]).exit_code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.exit_code, 0);
    assert!(help.stdout.unwrap().contains("pushout-k"));
}

#[test]
fn algebra_file_input() {
    let f = temp_json(&m2_file());
    let path = f.path().to_str().unwrap();
    let exec = run(&["census", "--file", path]);
    assert_eq!(exec.exit_code, 0, "{}", exec.stderr);
    let c = &results(&exec)["census"];
    assert_eq!(c["type2_split"], 2);
    assert_eq!(c["dimension_sum"], 8);

    let g = results(&run(&["grading", "--file", path]));
    assert_eq!(
        (
            g["grading"]["fixed_dim"].clone(),
            g["grading"]["odd_dim"].clone()
        ),
        (json!(2), json!(2))
    );
}

#[test]
fn algebra_file_errors_carry_coordinates() {
    let mut doc = m2_file();
    doc["generators"][1][1][0] = json!(["x", 0]);
    let exec = run(&["census", "--file", temp_json(&doc).path().to_str().unwrap()]);
    assert_eq!(exec.exit_code, 2);
    assert!(
        exec.stderr.contains("generator 1") && exec.stderr.contains("(1, 0)"),
        "{}",
        exec.stderr
    );

    let mut doc = m2_file();
    doc["automorphism"] = json!(null);
    doc.as_object_mut().unwrap().remove("automorphism");
    let exec = run(&[
        "classify",
        "--file",
        temp_json(&doc).path().to_str().unwrap(),
    ]);
    assert_eq!(exec.exit_code, 2);
    assert!(exec.stderr.contains("no automorphism"));

    let exec = run(&["census", "--file", "/nonexistent/a.json"]);
    assert_eq!(exec.exit_code, 2);
}

#[test]
fn reports_reproduce_from_embedded_seed_and_tolerance() {
    let first = run(&[
        "verify", "--lemma", "rep0", "--trials", "15", "--seed", "99",
    ]);
    let r = first.report().unwrap();
    let abs = r.tolerance.abs_tol.to_string();
    let rel = r.tolerance.rel_tol.to_string();
    let seed = r.seed.to_string();
    let again = run(&[
        "verify",
        "--lemma",
        "rep0",
        "--trials",
        "15",
        "--seed",
        &seed,
        "--abs-tol",
        &abs,
        "--rel-tol",
        &rel,
    ]);
    let strip = |e: &Execution| {
        let mut v = results(e);
        v.as_object_mut().unwrap().remove("elapsed_seconds");
        v
    };
    assert_eq!(strip(&first), strip(&again));

    let a = run(&["demo", "--model", "circle-conj", "--n", "6"]).stdout;
    let b = run(&["demo", "--model", "circle-conj", "--n", "6"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn tolerance_from_environment_and_flags() {
    let env = |k: &str| match k {
        "Z2CROSS_ABS_TOL" => Some("1e-9".to_string()),
        _ => None,
    };
    let exec = run_with_env(["z2cross", "grading", "--model", "m2"], env);
    assert_eq!(exec.report().unwrap().tolerance.abs_tol, 1e-9);
    let exec = run_with_env(
        ["z2cross", "grading", "--model", "m2", "--abs-tol", "1e-11"],
        env,
    );
    assert_eq!(exec.report().unwrap().tolerance.abs_tol, 1e-11);
    let bad = run_with_env(["z2cross", "grading", "--model", "m2"], |k| {
        (k == "Z2CROSS_REL_TOL").then(|| "tiny".to_string())
    });
    assert_eq!(bad.exit_code, 2);
    assert_eq!(
        run(&["grading", "--model", "m2", "--abs-tol", "-1"]).exit_code,
        2
    );
}

#[test]
fn snf_and_pushout() {
    let exec = run(&["snf", "--matrix", "[[2,4,4],[-6,6,12],[10,-4,-16]]"]);
    assert_eq!(exec.exit_code, 0, "{}", exec.stderr);
    let r = results(&exec);
    assert_eq!(r["divisors"], json!(["2", "6", "12"]));
    assert_eq!(r["cokernel"]["invariant_factors"], json!(["2", "6", "12"]));
    assert_eq!(run(&["snf", "--matrix", "[[1,2],[3]]"]).exit_code, 2);

    let push = json!({
        "g1": { "free_rank": 2 },
        "g2": { "free_rank": 2 },
        "g_g": { "free_rank": 2 },
        "i1": [["1", "0"], ["0", "1"]],
        "i2": [["1", "0"], ["0", "1"]],
    });
    let f = temp_json(&push);
    let exec = run(&["pushout-k", "--file", f.path().to_str().unwrap()]);
    assert_eq!(exec.exit_code, 0, "{}", exec.stderr);
    assert_eq!(results(&exec)["group"]["free_rank"], 2);
}

#[test]
fn model_commands_pass_their_checks() {
    for args in [
        &["crossed-product", "--model", "circle-conj", "--n", "5"][..],
        &["classify", "--model", "circle-conj", "--n", "6"],
        &["induce", "--model", "circle-flip", "--n", "6"],
        &["k0", "--model", "circle-flip", "--n", "6", "--crossed"],
        &["k0-map", "--model", "circle-conj", "--n", "4"],
        &[
            "verify",
            "--lemma",
            "central2",
            "--trials",
            "12",
            "--max-dim",
            "3",
        ],
        &[
            "verify", "--lemma", "rep0", "--trials", "2", "--mode", "swap",
        ],
    ] {
        let exec = run(args);
        assert_eq!(exec.exit_code, 0, "{args:?}: {}", exec.stderr);
        assert!(!exec.report().unwrap().anchor.is_empty());
    }
    let k = results(&run(&["k0", "--model", "m2"]));
    assert_eq!(k["k0"]["group"]["display"], "Z");
}

#[test]
fn binary_writes_report_and_exit_code() {
    let bin = env!("CARGO_BIN_EXE_z2cross");
    let out = Command::new(bin)
        .args(["paper", "--case", "alpha"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let r = Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(r.results["k0"]["free_rank"], 4);
    assert!(!out.stderr.is_empty());

    let out = Command::new(bin)
        .args(["demo", "--model", "circle-flip", "--n", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_automorphism_is_the_identity() {
    let mut doc = m2_file();
    doc["automorphism"] = json!([]);
    let exec = run(&["census", "--file", temp_json(&doc).path().to_str().unwrap()]);
    assert_eq!(exec.exit_code, 0, "{}", exec.stderr);
    assert_eq!(results(&exec)["census"]["type1"], 2);
}
