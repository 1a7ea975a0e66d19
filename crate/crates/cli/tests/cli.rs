use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn kneser(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kneser")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = kneser(&all);
    let code = out.status.code().unwrap();
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, value)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn pairs(dir: &TempDir, n: usize, s: u32) -> PathBuf {
    let sets: Vec<String> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| format!("[{a},{b}]"))).collect();
    let text = format!(r#"{{"n":{n},"s":{:?},"sets":[{}]}}"#, vec![s; n], sets.join(","));
    write(dir, &format!("pairs{n}.json"), &text)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn build_counts_edges() {
    let dir = TempDir::new().unwrap();
    let singletons = write(&dir, "single.json", r#"{"n":3,"s":[2,2,2],"sets":[[1],[2],[3]]}"#);
    let out = dir.path().join("h.json");
    let (code, v) = json(&["build", p(&singletons), "--r", "3", "--out", p(&out)]);
    assert_eq!(code, 0);
    assert_eq!((v["vertices"].as_u64(), v["edges"].as_u64()), (Some(3), Some(7)));
    let h: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(h["edges"].as_array().unwrap().len(), 7);

    let four = pairs(&dir, 4, 2);
    let (_, v) = json(&["build", p(&four), "--r", "4", "--variant", "set"]);
    assert_eq!(v["edges"].as_u64(), Some(3));
    let (_, v) = json(&["build", p(&four), "--r", "4", "--variant", "multiset"]);
    assert_eq!(v["edges"].as_u64(), Some(6));

    let empty = write(&dir, "empty.json", r#"{"n":3,"s":[1,1,1],"sets":[]}"#);
    let (code, v) = json(&["build", p(&empty), "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["vertices"].as_u64(), v["edges"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn chi_on_systems_and_files() {
    let dir = TempDir::new().unwrap();
    let five = pairs(&dir, 5, 2);
    for variant in ["set", "multiset"] {
        let (code, v) = json(&["chi", p(&five), "--r", "4", "--variant", variant]);
        assert_eq!(code, 0);
        assert_eq!(v["chi"].as_u64(), Some(3), "{variant}");
    }
    let witness = dir.path().join("witness.json");
    let (_, v) = json(&["chi", p(&five), "--r", "4", "--out", p(&witness)]);
    let coloring: Value = serde_json::from_str(&fs::read_to_string(&witness).unwrap()).unwrap();
    assert_eq!(coloring["colors"], v["chi"]);
    assert_eq!(coloring["assignment"].as_array().unwrap().len(), 10);

    let edgeless = write(&dir, "edgeless.json", r#"{"vertices":4,"r":3,"multiset":false,"edges":[]}"#);
    let (code, v) = json(&["chi", p(&edgeless)]);
    assert_eq!((code, v["chi"].as_u64()), (0, Some(1)));
}

#[test]
fn chi_reports_interval_when_budget_runs_out() {
    let dir = TempDir::new().unwrap();
    let seven = pairs(&dir, 7, 2);
    let (code, v) = json(&["chi", p(&seven), "--r", "4", "--variant", "set", "--budget-seconds", "0"]);
    assert_eq!(code, 3);
    assert!(v["chi"].is_null());
    assert!(v["lower"].as_u64().unwrap() <= 4 && 4 <= v["upper"].as_u64().unwrap());
}

#[test]
fn defect_values() {
    let dir = TempDir::new().unwrap();
    let worked = write(&dir, "worked.json", r#"{"n":3,"s":[3,2,1],"sets":[[2,3]]}"#);
    for (r, expected) in [("1", 4), ("2", 2), ("3", 0)] {
        let (code, v) = json(&["defect", p(&worked), "--r", r]);
        assert_eq!((code, v["defect"].as_u64()), (0, Some(expected)));
    }
    let empty = write(&dir, "empty.json", r#"{"n":3,"s":[1,1,1],"sets":[]}"#);
    let (_, v) = json(&["defect", p(&empty), "--r", "2", "--s", "5,1,4"]);
    assert_eq!(v["defect"].as_u64(), Some(3 + 2));
    let six = pairs(&dir, 6, 1);
    let cert = dir.path().join("cert.json");
    let (_, v) = json(&["defect", p(&six), "--r", "5", "--s", "4", "--out", p(&cert)]);
    assert_eq!(v["defect"].as_u64(), Some(19));
    let c: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["value"].as_u64(), Some(19));
}

#[test]
fn bounds_and_represent() {
    let dir = TempDir::new().unwrap();
    let five = pairs(&dir, 5, 2);
    let (code, v) = json(&["bounds", p(&five), "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["condition_met"], Value::Bool(true));
    assert!(v["lower_bound"].as_u64().unwrap() <= v["chi_with_multiplicities"].as_u64().unwrap());
    assert!(v["chi_with_multiplicities"].as_u64().unwrap() <= v["upper_bound"].as_u64().unwrap());

    let h = write(
        &dir,
        "h.json",
        r#"{"vertices":4,"r":3,"multiset":false,"edges":[[[1,1],[2,1],[4,1]],[[1,1],[3,1],[4,1]],[[2,1],[3,1],[4,1]]]}"#,
    );
    let rep = dir.path().join("rep.json");
    let (code, v) = json(&["represent", p(&h), "--out", p(&rep)]);
    assert_eq!(code, 0);
    assert_eq!(v["up_monotone"], Value::Bool(true));
    assert_eq!(v["kg1_representable"], Value::Bool(false));
    let r: Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(r["sets"].as_array().unwrap().len(), 4);

    let bent = write(&dir, "bent.json", r#"{"vertices":3,"r":3,"multiset":true,"edges":[[[1,2],[3,1]],[[2,2],[3,1]]]}"#);
    let (code, v) = json(&["represent", p(&bent)]);
    assert_eq!(code, 0);
    assert_eq!(v["convex"], Value::Bool(false));
    assert_eq!(v["convex_witness"].as_str(), Some("{{1,2,3}}"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"n":2,"s":[1,1],"sets":[[3]]}"#);
    assert_eq!(kneser(&["defect", p(&bad), "--r", "2"]).status.code(), Some(2));
    assert_eq!(kneser(&["defect", "/nonexistent.json", "--r", "2"]).status.code(), Some(2));
    let ok = pairs(&dir, 4, 2);
    assert_eq!(kneser(&["build", p(&ok), "--r", "2", "--variant", "multiset"]).status.code(), Some(2));
    assert_eq!(kneser(&["build", p(&ok), "--r", "4", "--s", "1,2,3"]).status.code(), Some(2));
    assert_eq!(kneser(&["verify-paper", "--scope", "nowhere"]).status.code(), Some(2));
    assert_eq!(kneser(&["chi"]).status.code(), Some(2));
}

#[test]
fn ledger_is_deterministic_and_scoped() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        let out = kneser(&["verify-paper", "--scope", "counterexamples", "--out", p(path)]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.lines().take_while(|l| !l.contains("passed")).all(|l| l.contains("counterexamples.")));

    let (code, v) = json(&["verify-paper", "--scope", "formulas", "--budget-seconds", "0"]);
    assert_eq!(code, 0);
    let facts = v.as_array().unwrap();
    assert!(facts.iter().any(|f| f["status"] == "skipped-budget"));
    assert!(facts.iter().any(|f| f["status"] == "pass"));
    assert!(facts.iter().all(|f| f["status"] != "fail"));
}

#[test]
fn full_ledger_passes() {
    let out = kneser(&["verify-paper"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains(" 0 failed, 0 skipped"));
}
