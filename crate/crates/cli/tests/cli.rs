use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .display()
        .to_string()
}

fn gpw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpw"))
        .args(args)
        .env_remove("GPW_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = gpw(&full);
    (
        serde_json::from_slice(&out.stdout).expect("json output"),
        out.status.code().unwrap(),
    )
}

#[test]
fn normal_form_of_commuting_pair() {
    let hex = example("hexagon.gp");
    let (v, code) = json(&["normal-form", &hex, "y2 x1"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "normal-form");
    assert_eq!(v["result"]["word"], "x1 y2");
    let out = gpw(&["normal-form", &hex, "x1 y2 x1^-1"]);
    assert!(stdout(&out).contains("word: y2"));
}

#[test]
fn classify_hexagon_product() {
    let (v, code) = json(&["classify", &example("hexagon.gp"), "x1 x2 x3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["strongly_irreducible"], true);
    assert_eq!(v["result"]["supp"], serde_json::json!(["x1", "x2", "x3"]));
}

#[test]
fn regular_but_not_strongly_irreducible() {
    let (v, _) = json(&["classify", &example("dihedral.gp"), "u w"]);
    assert_eq!(v["result"]["regular"], true);
    assert_eq!(v["result"]["strongly_irreducible"], false);
}

#[test]
fn group_operations() {
    let free = example("free2.gp");
    let (v, _) = json(&["mul", &free, "a b", "b^-1 a"]);
    assert_eq!(v["result"]["product"], "a^2");
    let (v, _) = json(&["pow", &free, "a b", "-2"]);
    assert_eq!(v["result"]["power"], "b^-1 a^-1 b^-1 a^-1");
    let (v, _) = json(&["cyclic-reduce", &free, "a b a^-1"]);
    assert_eq!(v["result"]["core"], "b");
    assert_eq!(v["result"]["conjugator"], "a");
}

#[test]
fn supports_and_tau() {
    let hex = example("hexagon.gp");
    let (v, _) = json(&["supp", &hex, "y1 x1 x2 y1^-1"]);
    assert_eq!(v["result"]["supp"], serde_json::json!(["x1", "x2"]));
    let (v, _) = json(&["stsupp", &example("dihedral.gp"), "u w t"]);
    assert_eq!(v["result"]["stsupp"], serde_json::json!(["u", "w"]));
    let (v, _) = json(&["tau", &hex, "x1 x2 x3", "--vertex", "x2"]);
    assert_eq!(v["result"]["trees"][0]["tau"], 2);
    let (v, _) = json(&["components", &hex, "x1 y2"]);
    assert_eq!(v["result"]["components"].as_array().unwrap().len(), 2);
}

#[test]
fn searches_with_certificates() {
    let hex = example("hexagon.gp");
    let letters = example("hexagon_letters.txt");
    let (v, code) = json(&["find", "--target", "strongly-irreducible", &hex, "--file", &letters]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["element"], "x1 x2 x3");
    assert_eq!(v["certificate"]["n"], 3);
    let (v, code) = json(&["find", "--target", "regular", &hex, "x1", "y2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["feasible"], false);
    let (v, code) = json(&["full-support", "--torsion-free", &hex, "x1 y1", "x2"]);
    assert_eq!(code, 0);
    assert!(v["bounds"]["n"].is_u64());
    let (v, code) = json(&["exponent-sum", &example("free2.gp"), "a", "a^-1 b"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["element"], "b a^-1 b");
    let (v, code) = json(&["simul-lox", &example("free2.gp"), "a b", "a", "--vertices", "a,b"]);
    assert_eq!(code, 0);
    assert_eq!(v["bounds"]["exponent"], 80);
    let (v, code) = json(&["exceptional", &example("free2.gp"), "a b", "b^-1 a^-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cover"]["rays"], serde_json::json!(["1/1"]));
}

#[test]
fn growth_and_verification() {
    let (v, code) = json(&["growth", &example("free2.gp"), "a", "b", "--ball", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["sizes"], serde_json::json!([5, 17, 53, 161]));
    let (v, code) = json(&[
        "growth",
        &example("free2.gp"),
        "a",
        "b",
        "--n",
        "3",
        "--alpha",
        "1",
        "--beta",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["inequality"]["holds"],
        serde_json::json!([true, true, true])
    );
    let out = gpw(&["verify", "bipartite", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: PASS"));
    let (v, code) = json(&["verify", "abelian", "--param", "1"]);
    assert_eq!((code, v["result"]["verdict"].as_str()), (0, Some("PASS")));
}

#[test]
fn oracle_mode_agrees() {
    let hex = example("hexagon.gp");
    for args in [
        vec!["--oracle", "normal-form", &hex, "y2 x1 y2^-1 x3"],
        vec!["--oracle", "stsupp", &hex, "x1 y1 x1^-1"],
        vec!["--oracle", "cyclic-reduce", &hex, "y1 x1 x2 y1^-1"],
        vec!["--oracle", "supp-set", &hex, "y1 x1 y1^-1", "y1 x2 y1^-1"],
        vec!["--oracle", "growth", &hex, "x1", "y2", "--n", "3"],
    ] {
        let (v, code) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["result"]["oracle"]["agrees"], true, "{args:?}");
    }
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = std::env::temp_dir().join(format!("gpw-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("loop.gp");
    std::fs::write(&bad, "graph {\n  vertices: a;\n  edges: a-a;\n  group a = Z;\n}\n").unwrap();
    let out = gpw(&["supp", bad.to_str().unwrap(), "a"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("loop.gp:3:10: loop edge"), "{err}");
    let out = gpw(&["supp", &example("hexagon.gp"), "x1 ^"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gpw(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let (v, code) = json(&["full-support", "--torsion-free", &example("dihedral.gp"), "u"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "precondition");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn structured_output_is_deterministic_across_thread_counts() {
    let hex = example("hexagon.gp");
    let args = ["--format", "json", "growth", &hex, "x1", "x2 y1", "y3", "--n", "4"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_gpw"))
            .args(args)
            .env("GPW_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("4"));
    let find = [
        "--format", "json", "find", "--target", "regular", &hex, "x1 y1", "x2", "x3 y2",
    ];
    let single = Command::new(env!("CARGO_BIN_EXE_gpw"))
        .args(find)
        .env("GPW_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_gpw"))
        .args(find)
        .env("GPW_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(single.stdout, many.stdout);
}
