use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const TORUS7: &str = "name: torus7\n1 2 4\n2 3 5\n3 4 6\n4 5 7\n5 6 1\n6 7 2\n7 1 3\n1 2 6\n2 3 7\n3 4 1\n4 5 2\n5 6 3\n6 7 4\n7 1 5\n";
const TETRAHEDRON: &str = "1 2 3\n1 2 4\n1 3 4\n2 3 4\n";

fn exshift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exshift")).args(args).env_remove("SHIFT_SEED").output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn shift_torus_marks_maximal_faces() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "t.tri", TORUS7);
    let out = exshift(&["shift", input.to_str().unwrap(), "--dim", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("method = surface"));
    for face in ["1 4 7 *", "1 5 6 *", "2 3 4 *"] {
        assert!(text.lines().any(|l| l.trim() == face), "missing {face}");
    }
    assert!(!text.contains("dimension 1"));
}

#[test]
fn generic_and_surface_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "t.tri", TORUS7);
    let path = input.to_str().unwrap();
    let parse = |method: &str| -> serde_json::Value {
        let out = exshift(&["shift", path, "--method", method, "--json"]);
        assert!(out.status.success());
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let generic = parse("generic");
    let surface = parse("surface");
    assert_eq!(generic["faces_by_dim"], surface["faces_by_dim"]);
    assert_eq!(generic["modulus"], serde_json::json!(2_305_843_009_213_693_951u64));
    assert_eq!(surface["modulus"], serde_json::Value::Null);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "t.tri", TORUS7);
    let path = input.to_str().unwrap();
    let a = exshift(&["shift", path, "--method", "generic", "--json"]);
    let b = exshift(&["shift", path, "--method", "generic", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let seeded = exshift(&["shift", path, "--method", "generic", "--json", "--seed", "17"]);
    let v: serde_json::Value = serde_json::from_slice(&seeded.stdout).unwrap();
    assert_eq!(v["seeds"][0], serde_json::json!(17));
}

#[test]
fn verify_reports_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "t.tri", TORUS7);
    let out = exshift(&["verify", input.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agree"], serde_json::json!(true));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = write(dir.path(), "s.tri", TETRAHEDRON);
    let bad = write(dir.path(), "bad.tri", "1 2 x\n");
    let missing = dir.path().join("absent.tri");
    assert_eq!(exshift(&["shift", sphere.to_str().unwrap(), "--method", "surface"]).status.code(), Some(2));
    assert_eq!(exshift(&["verify", sphere.to_str().unwrap()]).status.code(), Some(2));
    assert!(exshift(&["shift", sphere.to_str().unwrap()]).status.success());
    assert_eq!(exshift(&["shift", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(exshift(&["shift", missing.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(exshift(&["shift", sphere.to_str().unwrap(), "--modulus", "12"]).status.code(), Some(1));
}

#[test]
fn info_and_regions() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "t.tri", TORUS7);
    let path = input.to_str().unwrap();
    let info: serde_json::Value = serde_json::from_slice(&exshift(&["info", path, "--json"]).stdout).unwrap();
    assert_eq!(info["topology"], serde_json::json!("torus"));
    assert_eq!(info["f_vector"], serde_json::json!([7, 21, 14]));
    assert_eq!(info["irreducible"], serde_json::json!(true));
    let regions: serde_json::Value = serde_json::from_slice(&exshift(&["regions", path, "--json"]).stdout).unwrap();
    let list = regions.as_array().unwrap();
    assert_eq!(list.len(), 14);
    assert!(list.iter().all(|r| r["is_irreducible"] == serde_json::json!(true)));
}

#[test]
fn catalog_build_feeds_small_cases() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog");
    let out = exshift(&["catalog", "build", "--surface", "torus", "--max-n", "8", "--catalog-dir", catalog.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("8 entries"));
    assert!(catalog.join("torus").join("index.json").exists());
    let input = write(dir.path(), "t.tri", TORUS7);
    let with_tables = exshift(&["verify", input.to_str().unwrap(), "--catalog-dir", catalog.to_str().unwrap()]);
    assert!(with_tables.status.success());
}
