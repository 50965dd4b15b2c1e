use std::path::PathBuf;
use std::process::{Command, Output};

use brauerkit::wiring::{export_table, EndomorphismCa};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauerkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("brauerkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_cap_under_identity_form() {
    let out = run(&["eval", "cap", "--kind", "symmetric", "--d", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["entries"], serde_json::json!(["1", "0", "0", "1"]));
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(1), Some(4)));
}

#[test]
fn eval_oriented_loop_is_d() {
    let out = run(&["eval", "cap<v_up> * cup<v_dn>", "--kind", "gl", "--d", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["entries"], serde_json::json!(["3"]));
}

#[test]
fn dims_table_entry() {
    let out = run(&["dims", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "3,3,15,15"), "{text}");
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn ideal_of_e2_at_one() {
    let out = run(&["ideal", "--gen", "e(2)", "--delta", "1", "--bound", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    let slice = |m: u64, n: u64| {
        v["slices"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["m"].as_u64() == Some(m) && s["n"].as_u64() == Some(n))
            .cloned()
            .unwrap()
    };
    assert_eq!(slice(1, 1)["dim"], 0);
    assert_eq!(slice(2, 2)["dim"], 2);
}

#[test]
fn compose_snake() {
    let out = run(&["compose", "id(1) ++ cup", "cap ++ id(1)"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"], "1->1 : (s1 t1)");
}

#[test]
fn compose_linear_specialized() {
    let out = run(&["compose", "e(2) * e(2) + (-2)·e(2)", "--delta", "5"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"], "0 in 2->2");
}

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--mn", "3,3"]);
    assert_eq!(json(&out)["count"], 15);
}

#[test]
fn spec_suites_pass() {
    for args in [
        vec!["check", "category-laws", "--max-points", "4"],
        vec!["check", "fft", "--kind", "symmetric", "--d", "3", "--max-total", "6"],
        vec!["check", "sft", "--kind", "symmetric", "--d", "1", "--mn", "2,2"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(json(&out)["passed"], true, "{args:?}");
    }
}

#[test]
fn other_suites_pass() {
    for args in [
        vec!["check", "counting", "--max-total", "8"],
        vec!["check", "specialization", "--d", "3"],
        vec!["check", "gl", "--d", "2"],
        vec!["check", "ca-ideal", "--d", "1", "--bound", "4"],
        vec!["check", "ca-axioms", "--d", "2", "--max-total", "3"],
        vec!["check", "modular-operad", "--d", "2", "--max-total", "4"],
        vec!["check", "prop", "--kind", "gl", "--d", "2", "--max-points", "2"],
        vec!["check", "operad", "--max-points", "1"],
        vec!["check", "parser", "--cases", "100"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["check", "category-laws", "--max-points", "2", "--cases", "200", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("fft.json");
    let p = path.to_str().unwrap();
    let out = run(&["check", "fft", "--d", "1", "--max-total", "4", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "fft");
}

#[test]
fn tampered_oracle_fails_with_witness() {
    let table = export_table(&EndomorphismCa::symmetric(2), 2).unwrap();
    let mut v: Value = serde_json::from_str(&table).unwrap();
    let contraction = v["contraction"].as_object_mut().unwrap();
    let key = contraction.keys().next().unwrap().clone();
    // Breaks the symmetry of the pairing.
    contraction[&key][0][1] = Value::String("7".into());
    let path = scratch("tampered.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();

    let good = scratch("good.json");
    std::fs::write(&good, &table).unwrap();
    let ok = run(&["check", "ca-axioms", "--oracle", good.to_str().unwrap(), "--max-total", "2"]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stdout));

    let out = run(&["check", "ca-axioms", "--oracle", path.to_str().unwrap(), "--max-total", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["passed"], false);
    let failing: Vec<&Value> = report["report"]["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r["counterexample"].is_string()));
}

#[test]
fn errors_exit_with_two() {
    let out = run(&["eval", "cap ++ (cup"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = run(&["check", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["compose", "cap", "cap"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_is_enforced() {
    let out = Command::new(env!("CARGO_BIN_EXE_brauerkit"))
        .args(["check", "gl", "--d", "3", "--max-total", "3"])
        .env("BRAUERKIT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
