//! End-to-end tests of the `lenscalc` binary: exit codes, output
//! determinism, and the summary format.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lenscalc"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const TWO: &str = r#"{
  "objects": ["0", "1"],
  "morphisms": [
    {"name": "id0", "src": "0", "tgt": "0"},
    {"name": "id1", "src": "1", "tgt": "1"},
    {"name": "u", "src": "0", "tgt": "1"}
  ],
  "identities": {"0": "id0", "1": "id1"},
  "compose": [["id0","id0","id0"],["id1","id1","id1"],["u","id0","u"],["id1","u","u"]]
}"#;

const IDEM: &str = r#"{
  "objects": ["*"],
  "morphisms": [
    {"name": "id*", "src": "*", "tgt": "*"},
    {"name": "e", "src": "*", "tgt": "*"}
  ],
  "identities": {"*": "id*"},
  "compose": [["e","e","e"],["id*","e","e"],["e","id*","e"],["id*","id*","id*"]]
}"#;

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn validate_accepts_a_category_document() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "two.json", TWO);
    let out = run(dir.path(), &["validate", "two.json"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["kind"], "category");
    assert_eq!(value["valid"], true);

    let out = run(dir.path(), &["validate", "two.json", "--format", "summary"]);
    assert_eq!(stdout(&out), "CHECK validate PASS\n");
}

#[test]
fn parse_errors_name_the_file_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "broken.json", "{\"objects\": [}");
    let out = run(dir.path(), &["validate", "broken.json"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("broken.json:1:"), "error names file and line: {err}");
}

#[test]
fn law_violations_exit_1_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "two.json", TWO);
    // Not a functor: u must map to a morphism 0 -> 0, but id1 is not one.
    write(
        dir.path(),
        "bad.json",
        r#"{
  "dom": "two.json",
  "cod": "two.json",
  "onObjects": {"0": "0", "1": "0"},
  "onMorphisms": {"id0": "id0", "id1": "id0", "u": "id1"}
}"#,
    );
    let out = run(dir.path(), &["validate", "bad.json"]);
    assert_eq!(code(&out), 1);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value["error"].as_str().unwrap().contains("u"), "witness names the morphism");
}

#[test]
fn generated_documents_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(dir.path(), &["gen", "category", "--seed", "3"]);
    let b = run(dir.path(), &["gen", "category", "--seed", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with('\n'));
}

#[test]
fn generate_validate_and_apply_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["gen", "category", "--seed", "3", "--out", "A.json"])), 0);
    assert_eq!(code(&run(d, &["gen", "category", "--seed", "9", "--out", "B.json"])), 0);
    assert_eq!(
        code(&run(d, &["gen", "symlens", "A.json", "B.json", "--seed", "4", "--out", "s.json"])),
        0
    );
    assert_eq!(code(&run(d, &["validate", "s.json"])), 0);
    assert_eq!(code(&run(d, &["dagger", "s.json"])), 0);
    assert_eq!(code(&run(d, &["apply", "r", "s.json", "--out", "rs.json"])), 0);
    assert_eq!(code(&run(d, &["validate", "rs.json"])), 0);
    assert_eq!(code(&run(d, &["apply", "m", "rs.json"])), 0);
    assert_eq!(
        code(&run(d, &["gen", "span", "A.json", "B.json", "--seed", "11", "--out", "sp.json"])),
        0
    );
    assert_eq!(code(&run(d, &["validate", "sp.json"])), 0);
}

#[test]
fn apply_l_reports_an_unsaturated_pushout_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "idem.json", IDEM);
    assert_eq!(
        code(&run(
            d,
            &["gen", "symlens", "idem.json", "idem.json", "--seed", "0", "--out", "s.json"]
        )),
        0
    );
    let out = run(d, &["apply", "l", "s.json", "--bound", "4"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn check_adjunction_passes_on_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["gen", "category", "--seed", "3", "--out", "A.json"])), 0);
    assert_eq!(code(&run(d, &["gen", "category", "--seed", "9", "--out", "B.json"])), 0);
    let out = run(
        d,
        &[
            "check-adjunction",
            "A.json",
            "B.json",
            "--seed",
            "7",
            "--count",
            "5",
            "--format",
            "summary",
        ],
    );
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(!lines.is_empty());
    for line in &lines {
        assert!(line.starts_with("CHECK "), "summary line: {line}");
        assert!(
            line.ends_with(" PASS") || line.ends_with(" SKIP"),
            "no failures expected: {line}"
        );
    }
    assert!(lines.iter().any(|l| l.starts_with("CHECK triangle-1 ")));
}

#[test]
fn check_2cell_accepts_an_identity_state_map() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["gen", "category", "--seed", "3", "--out", "A.json"])), 0);
    assert_eq!(code(&run(d, &["gen", "category", "--seed", "9", "--out", "B.json"])), 0);
    assert_eq!(
        code(&run(d, &["gen", "symlens", "A.json", "B.json", "--seed", "4", "--out", "s.json"])),
        0
    );
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("s.json")).unwrap()).unwrap();
    let map: serde_json::Map<String, serde_json::Value> = s["states"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x.as_str().unwrap().to_string(), x.clone()))
        .collect();
    write(
        d,
        "cell.json",
        &serde_json::json!({ "stateMap": map }).to_string(),
    );
    let out = run(d, &["check-2cell", "s.json", "s.json", "cell.json"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // A non-identity wrong map must be rejected with exit 1.
    let states = s["states"].as_array().unwrap();
    if states.len() >= 2 {
        let mut wrong = map.clone();
        let first = states[0].as_str().unwrap().to_string();
        wrong.insert(first, states[1].clone());
        write(d, "wrong.json", &serde_json::json!({ "stateMap": wrong }).to_string());
        let out = run(d, &["check-2cell", "s.json", "s.json", "wrong.json"]);
        assert_eq!(code(&out), 1);
    }
}

#[test]
fn functor_tools_classify_factor_and_compose() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "two.json", TWO);
    write(
        d,
        "collapse.json",
        r#"{
  "dom": "two.json",
  "cod": "two.json",
  "onObjects": {"0": "0", "1": "0"},
  "onMorphisms": {"id0": "id0", "id1": "id0", "u": "id0"}
}"#,
    );
    let out = run(d, &["classify", "collapse.json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["isBijectiveOnObjects"], false);
    assert_eq!(value["isFullyFaithful"], false);

    let out = run(d, &["factor", "collapse.json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // The first factor is bijective on objects, so the intermediate
    // category keeps the domain's objects.
    assert_eq!(value["image"]["objects"], serde_json::json!(["0", "1"]));

    let out = run(d, &["compose", "collapse.json", "collapse.json"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn lens_tools_product_fake_pullback_embed_and_span_rep() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "two.json", TWO);
    assert_eq!(code(&run(d, &["gen", "lens", "two.json", "--seed", "2", "--out", "l1.json"])), 0);
    assert_eq!(code(&run(d, &["gen", "lens", "two.json", "--seed", "5", "--out", "l2.json"])), 0);
    assert_eq!(code(&run(d, &["fake-pullback", "l1.json", "l2.json", "--out", "fp.json"])), 0);
    assert_eq!(code(&run(d, &["validate", "fp.json"])), 0);
    let out = run(d, &["product", "l1.json", "l2.json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value["product"]["get"].is_object());
    assert_eq!(code(&run(d, &["embed", "sym", "l1.json", "--out", "es.json"])), 0);
    assert_eq!(code(&run(d, &["validate", "es.json"])), 0);
    assert_eq!(code(&run(d, &["embed", "span", "l1.json", "--out", "ep.json"])), 0);
    assert_eq!(code(&run(d, &["validate", "ep.json"])), 0);
    let out = run(d, &["span-rep", "l1.json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value["apex"].is_object());
    assert!(value["get"].is_object());
}

#[test]
fn kind_mismatches_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "two.json", TWO);
    // classify wants a functor, not a category.
    let out = run(d, &["classify", "two.json"]);
    assert_eq!(code(&out), 2);
    // compose across kinds is rejected.
    write(d, "idem.json", IDEM);
    assert_eq!(code(&run(d, &["gen", "lens", "two.json", "--seed", "2", "--out", "l.json"])), 0);
    let out = run(d, &["compose", "two.json", "l.json"]);
    assert_eq!(code(&out), 2);
}
