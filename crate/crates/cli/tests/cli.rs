use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn grpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn analyze_c2() {
    let out = grpoly(&["analyze", &data("C2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let ev = &r["results"]["evidence"];
    assert_eq!(ev["order"], 2);
    assert_eq!(ev["abelian"], true);
    assert_eq!(ev["derived_length"], 1);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["command"], "analyze");
}

#[test]
fn analyze_perm_group_cross_checks_chain() {
    let out = grpoly(&["analyze", &data("A5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let ev = &r["results"]["evidence"];
    assert_eq!(ev["order"], 60);
    assert_eq!(ev["soluble"], false);
    assert_eq!(ev["derived_length"], Value::Null);
    assert_eq!(ev["orbit_sizes"], serde_json::json!([5, 4, 3]));
}

#[test]
fn lemma21_s3_passes() {
    let out = grpoly(&[
        "verify",
        "lemma2.1",
        &data("S3.json"),
        "--n",
        "1",
        "--max-word-len",
        "6",
        "--vars",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["results"]["claim"], "lemma2.1");
}

#[test]
fn cohen_fibonacci() {
    let out = grpoly(&["cohen", &data("fib.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let ev = &r["results"]["evidence"];
    assert_eq!(ev["annihilator"]["text"], "T^3 - 2T^2 + 1");
    assert_eq!(ev["annihilator_at_matrix"], serde_json::json!([["0", "0"], ["0", "0"]]));
}

#[test]
fn cohen_torsion_inversion() {
    let out = grpoly(&["cohen", &data("c6_inversion.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"]["evidence"]["annihilator"]["text"], "T + 1");
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["omega".into(), data("S3.json"), "--a".into(), "1".into(), "--b".into(), "2".into()],
        vec!["verify".into(), "lemma3.5".into(), data("Q8.json"), "--seed".into(), "9".into()],
        vec!["polyfun".into(), "build".into(), data("S3.json"), "--format".into(), "text".into()],
        vec!["decompose".into(), data("A4.json")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = grpoly(&args);
        let b = grpoly(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn keys_are_sorted_in_output() {
    let out = grpoly(&["decompose", &data("S3.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
    assert!(top.contains(&"seed") && top.contains(&"versions") && !top.contains(&"wall_time_ms"));
}

#[test]
fn usage_and_validation_errors_exit_2() {
    let out = grpoly(&["analyze", &data("bad_identity.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("identity"));

    let out = grpoly(&["analyze", &data("bad_syntax.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad_syntax.json:3:1"));

    assert_eq!(grpoly(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(grpoly(&["verify", "lemma9.9", &data("C2.json")]).status.code(), Some(2));
    assert_eq!(grpoly(&["cohen", &data("S3.json")]).status.code(), Some(2));
    assert_eq!(grpoly(&["verify", "thm1.1", &data("fib.json")]).status.code(), Some(2));
    assert_eq!(grpoly(&["omega", &data("S3.json"), "--a", "1"]).status.code(), Some(2));
    assert_eq!(grpoly(&["decompose", &data("S3.json"), "--element", "6"]).status.code(), Some(2));
    // these verifiers presuppose solubility
    assert_eq!(grpoly(&["verify", "lemma3.2", &data("A5.json")]).status.code(), Some(2));
    assert_eq!(grpoly(&["analyze", "/nonexistent/group.json"]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let out = grpoly(&["verify", "lemma2.1", &data("S3.json"), "--n", "2", "--cap", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    let r = json_of(&out);
    assert_eq!(r["verdict"], "inconclusive-bounded");
    assert_eq!(r["results"]["status"], "incomplete");

    // in Q8, [i, j] = -1 is nontrivial while [i, j, j] = 1, so r = 1 cannot settle every pair
    let out = grpoly(&["omega", &data("Q8.json"), "--bounds", "1,0,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!json_of(&out)["results"]["checks"][1]["detail"].as_array().unwrap().is_empty());
}

#[test]
fn naive_overflow_falls_back_to_chain() {
    let out = grpoly(&["polyfun", "build", &data("S3.json"), "--n", "2", "--cap", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let ev = &r["results"]["evidence"];
    assert_eq!(ev["order"], "4251528");
    assert_eq!(ev["fallback"]["status"], "incomplete");
    assert_eq!(r["results"]["parameters"]["strategy"], "chain");
}

#[test]
fn polyfun_build_and_term() {
    let out = grpoly(&["polyfun", "build", &data("S3.json"), "--term", "a1 * x1^2 * a1^-1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let ev = &r["results"]["evidence"];
    assert_eq!(ev["order"], "324");
    assert_eq!(ev["one_subgroup_order"], "54");
    assert_eq!(ev["term"]["values"].as_array().unwrap().len(), 6);
    assert!(r["results"]["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn theorem_checks_on_corpus_files() {
    for (claim, file, extra) in [
        ("thm1.1", "A5.json", vec![]),
        ("thm1.1", "Q8.json", vec!["--n", "2"]),
        ("thm1.2", "C6.json", vec![]),
        ("lemma2.2", "C6.json", vec![]),
        ("lemma3.2", "S3.json", vec![]),
        ("lemma3.5", "A4.json", vec![]),
    ] {
        let path = data(file);
        let mut args = vec!["verify", claim, path.as_str()];
        args.extend(extra);
        let out = grpoly(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn out_flag_and_timing() {
    let dir = std::env::temp_dir().join(format!("grpoly-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.display().to_string();
    let out = grpoly(&["analyze", &data("C6.json"), "--out", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, grpoly(&["analyze", &data("C6.json")]).stdout);

    let timed = json_of(&grpoly(&["analyze", &data("C6.json"), "--timing"]));
    assert!(timed["wall_time_ms"].is_u64());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn decompose_abelian_presentation() {
    let out = grpoly(&["decompose", &data("c6_inversion.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("torsion_invariants: [\"6\"]"), "{text}");
    assert!(text.contains("verdict: pass"));
}
