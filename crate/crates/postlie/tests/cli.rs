use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_postlie")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn build(dir: &TempDir, name: &str, params: &str) -> String {
    let path = dir.path().join(format!("{name}-{params}.json"));
    let path = path.to_str().unwrap().to_string();
    let o = run(&["catalog", "build", name, params, "--out", &path]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn edit(path: &str, f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    let out = Path::new(path).with_extension("edited.json");
    std::fs::write(&out, serde_json::to_string(&v).unwrap()).unwrap();
    out.to_str().unwrap().to_string()
}

#[test]
fn catalog_build_then_check_all_passes() {
    let dir = TempDir::new().unwrap();
    for (name, params) in [
        ("dim2-p3-family1", "2"),
        ("dim2-p3-family4", "1"),
        ("dim3-p2-triangle1", "1,1"),
        ("dim3-p2-triangle2", "0"),
        ("heisenberg-p3", "1,0,2"),
        ("sl2-p3-gf9-corrected", ""),
        ("tensor-witt", "2"),
        ("quasi-shuffle", "2,3"),
        ("n4-rota-baxter", "5"),
    ] {
        let path = build(&dir, name, params);
        let o = run(&["check", &path]);
        assert_eq!(code(&o), 0, "{name} {params}\n{}", stdout(&o));
    }
}

#[test]
fn gf9_entry_has_field_block() {
    let o = run(&["catalog", "build", "sl2-p3-gf9"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["field"]["p"], 3);
    assert_eq!(v["field"]["modulus"], serde_json::json!([1, 0, 1]));
}

#[test]
fn sl2_gf9_entry_is_not_postlie() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "sl2-p3-gf9", "");
    let o = run(&["check", &path, "--suite", "postlie"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("postlie.associator"));
}

#[test]
fn mutated_table_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "heisenberg-p3", "1,0,2");
    // e1▶e2 gains an e1 component
    let bad = edit(&path, |v| {
        v["postlie"].as_array_mut().unwrap().push(serde_json::json!([0, 1, [[1], [0], [0]]]));
    });
    let o = run(&["check", &bad, "--suite", "postlie"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("lhs:"));
    let o = run(&["--json", "check", &bad, "--suite", "postlie"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    let failing: Vec<_> = v["records"].as_array().unwrap().iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failing.is_empty());
    assert!(failing[0]["witness"]["inputs"].as_array().is_some());
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(code(&run(&["check", garbage.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["check", dir.path().join("missing.json").to_str().unwrap()])), 2);

    let path = build(&dir, "heisenberg-p3", "0,0,0");
    let out_of_range = edit(&path, |v| v["bracket"][0][1] = serde_json::json!(7));
    assert_eq!(code(&run(&["check", &out_of_range])), 2);
    let bad_scalar = edit(&path, |v| v["bracket"][0][2][2] = serde_json::json!([5]));
    assert_eq!(code(&run(&["check", &bad_scalar])), 2);

    assert_eq!(code(&run(&["check", &path, "--suite", "jordan"])), 2);
    assert_eq!(code(&run(&["catalog", "build", "no-such-entry"])), 2);
    assert_eq!(code(&run(&["catalog", "build", "heisenberg-p3", "1,2"])), 2);
}

#[test]
fn missing_tables_exit_2() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "heisenberg-p3", "0,0,0");
    let no_triangle = edit(&path, |v| {
        v.as_object_mut().unwrap().remove("postlie");
    });
    assert_eq!(code(&run(&["subadjacent", &no_triangle])), 2);
    assert_eq!(code(&run(&["check", &no_triangle, "--suite", "postlie"])), 2);
}

#[test]
fn same_seed_same_json() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "heisenberg-p3", "2,1,0");
    let a = run(&["--json", "--seed", "7", "check", &path]);
    let b = run(&["--json", "--seed", "7", "check", &path]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn subadjacent_tables() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "dim2-p3-family1", "1");
    let o = run(&["subadjacent", &path]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("⟦e1,e2⟧ = 0"), "{text}");
    assert!(text.contains("e1^[3]▶ = e1"), "{text}");

    // ⟦e1,e2⟧ = (1 + γ − θ)e3
    let path = build(&dir, "heisenberg-p3", "0,1,0");
    let o = run(&["--json", "subadjacent", &path]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bracket"][0], serde_json::json!(["e1", "e2", "2·e3"]));
}

#[test]
fn free_verify_range() {
    let o = run(&["free-verify", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("time"));
    assert_eq!(code(&run(&["free-verify", "7"])), 2);
}

#[test]
fn coeffs_tables() {
    let o = run(&["coeffs", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("C(1,2) = 1"), "{text}");
    assert!(text.contains("C(2,1) = 2"), "{text}");
    let o = run(&["--json", "coeffs", "5"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(code(&run(&["coeffs", "11"])), 0);
    assert_eq!(code(&run(&["coeffs", "13"])), 2);
    assert_eq!(code(&run(&["coeffs", "9"])), 2);
}

#[test]
fn catalog_list_names() {
    let o = run(&["--json", "catalog", "list"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<_> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap().to_string()).collect();
    assert!(names.contains(&"heisenberg-p3".to_string()));
    assert!(names.contains(&"quasi-shuffle".to_string()));
}
