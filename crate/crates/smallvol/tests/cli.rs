//! End-to-end tests of the command-line interface: output formats, exit
//! codes (0 = pass, 1 = claim failure, 2 = input error), and the
//! generate → classify → apply pipeline.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_smallvol"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("smallvol-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).expect("temp file writes");
    path
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn invariants_of_the_unit_square() {
    let file = write_temp(
        "square.json",
        r#"{"dim": 2, "vertices": [[0,0],[1,0],[0,1],[1,1]]}"#,
    );
    let out = run(&["invariants", file.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.contains("delta: 1+t, vol: 2, spans: true, pyramids: 0"),
        "unexpected output: {text}"
    );
    assert!(text.contains("delta coefficients: [1, 1, 0]"), "{text}");
}

#[test]
fn invariants_of_a_point() {
    let file = write_temp("point.json", r#"{"dim": 0, "vertices": [[]]}"#);
    let out = run(&["invariants", file.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("delta: 1, vol: 1"), "{}", stdout(&out));
}

#[test]
fn invariants_json_shape() {
    let file = write_temp(
        "seg.json",
        r#"{"name": "segment", "dim": 1, "vertices": [[0],[2]]}"#,
    );
    let out = run(&["invariants", file.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["delta"]["polynomial"], "1+t");
    assert_eq!(doc["delta"]["coefficients"], serde_json::json!([1, 1]));
    assert_eq!(doc["vol"], 2);
    assert_eq!(doc["spans"], true);
    assert_eq!(doc["name"], "segment");
}

#[test]
fn malformed_input_is_exit_2_not_a_panic() {
    let truncated = write_temp("bad.json", r#"{"dim": 2, "vertices": [[0,0"#);
    let out = run(&["invariants", truncated.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("malformed"), "{}", stderr(&out));

    let jagged = write_temp("jagged.json", r#"{"dim": 2, "vertices": [[0,0],[1]]}"#);
    let out = run(&["invariants", jagged.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["invariants", "/nonexistent/path.json"]);
    assert_eq!(exit_code(&out), 2);

    let huge = write_temp(
        "huge.json",
        r#"{"dim": 1, "vertices": [[99999999999999999999999]]}"#,
    );
    let out = run(&["invariants", huge.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn generate_simplex_families() {
    let out = run(&["generate", "Δ2", "--i1", "2"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["dim"], 3);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);

    // ASCII spelling lands on the same polytope
    let ascii = run(&["generate", "D2", "--i1", "2"]);
    assert_eq!(exit_code(&ascii), 0);
    let doc2: serde_json::Value = serde_json::from_str(&stdout(&ascii)).expect("valid json");
    assert_eq!(doc["vertices"], doc2["vertices"]);

    let out = run(&["generate", "B4", "--k", "2"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["dim"], 4);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn generate_rejects_bad_parameters() {
    // needs i1 < i2 < i3
    let out = run(&["generate", "Δ41", "--i1", "1", "--i2", "1", "--i3", "2"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("i1 < i2 < i3"), "{}", stderr(&out));

    let out = run(&["generate", "Δ3", "--i1", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("--i2"), "{}", stderr(&out));

    let out = run(&["generate", "P2", "--i1", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("does not take"), "{}", stderr(&out));

    let out = run(&["generate", "Z9"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown family"), "{}", stderr(&out));
}

#[test]
fn classify_recognizes_a_pyramid_tower() {
    // two pyramid layers over Δ3(1,2) = conv{(0,0),(1,0),(2,3)}, built by
    // embedding at height zero and adding the next unit vector as apex
    let tower = write_temp(
        "tower.json",
        r#"{"dim": 4, "vertices": [
            [0,0,0,0],[1,0,0,0],[2,3,0,0],[0,0,1,0],[0,0,0,1]]}"#,
    );
    let out = run(&["classify", tower.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(
        stdout(&out).contains("Δ3 (i1=1,i2=2), pyramids: 2"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn classify_rejects_large_volume_with_exit_1() {
    let big = write_temp(
        "big.json",
        r#"{"dim": 2, "vertices": [[0,0],[2,0],[0,2],[2,2]]}"#,
    );
    let out = run(&["classify", big.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("volume exceeds 4"), "{}", stdout(&out));
}

#[test]
fn classify_witness_replays_through_apply() {
    let q49 = run(&["generate", "Q4_9"]);
    assert_eq!(exit_code(&q49), 0);
    let reference: serde_json::Value = serde_json::from_str(&stdout(&q49)).unwrap();
    let ref_file = write_temp("q49.json", &stdout(&q49));

    // disguise it with a shear and a translation
    let map = write_temp(
        "map.json",
        r#"{"matrix": [[1,2,0,0,0],[0,1,0,0,0],[0,3,1,0,0],[1,0,0,1,0],[0,0,0,-1,1]],
            "translation": [4,-1,2,0,7]}"#,
    );
    let disguised = run(&["apply", map.to_str().unwrap(), ref_file.to_str().unwrap()]);
    assert_eq!(exit_code(&disguised), 0);
    let disguised_file = write_temp("q49-image.json", &stdout(&disguised));

    let cls = run(&["classify", disguised_file.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&cls), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&cls)).unwrap();
    assert_eq!(doc["outcome"]["family"], "Q4_9");
    assert_eq!(doc["pyramids"], 0);

    // the witness chain maps the disguised polytope back onto the catalog
    // representative exactly
    let witness = write_temp("witness.json", &doc["witness"].to_string());
    let replayed = run(&["apply", witness.to_str().unwrap(), disguised_file.to_str().unwrap()]);
    assert_eq!(exit_code(&replayed), 0);
    let replayed_doc: serde_json::Value = serde_json::from_str(&stdout(&replayed)).unwrap();
    assert_eq!(replayed_doc["vertices"], reference["vertices"]);
}

#[test]
fn equiv_exit_codes_and_witness() {
    let a = run(&["generate", "S4_2"]);
    let a_file = write_temp("s42.json", &stdout(&a));
    let map = write_temp(
        "shear.json",
        r#"{"matrix": [[1,0,0,0],[5,1,0,0],[0,0,1,0],[0,-2,0,1]], "translation": [1,2,3,4]}"#,
    );
    let b = run(&["apply", map.to_str().unwrap(), a_file.to_str().unwrap()]);
    let b_file = write_temp("s42-image.json", &stdout(&b));

    let out = run(&["equiv", a_file.to_str().unwrap(), b_file.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).trim() == "equivalent", "{}", stdout(&out));

    // the reported witness map really carries the first onto the second
    let out = run(&["equiv", a_file.to_str().unwrap(), b_file.to_str().unwrap(), "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["equivalent"], true);
    let witness_map = write_temp("witness-map.json", &doc["map"].to_string());
    let image = run(&["apply", witness_map.to_str().unwrap(), a_file.to_str().unwrap()]);
    let image_doc: serde_json::Value = serde_json::from_str(&stdout(&image)).unwrap();
    let b_doc: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(image_doc["vertices"], b_doc["vertices"]);

    // distinct classes exit 1
    let c = run(&["generate", "S4_1"]);
    let c_file = write_temp("s41.json", &stdout(&c));
    let out = run(&["equiv", a_file.to_str().unwrap(), c_file.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("not equivalent"), "{}", stdout(&out));
}

#[test]
fn verify_suite_passes_and_unknown_suite_is_exit_2() {
    let out = run(&["verify", "feasibility", "--dmax", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("0 failed"), "{}", stdout(&out));

    let out = run(&["verify", "nonsense"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown suite"), "{}", stderr(&out));
}

#[test]
fn verify_as_printed_feasibility_fails_with_exit_1() {
    // the volume-3 inequalities as printed reject an achieved tuple in
    // dimension 2, so the claim check must fail loudly
    let out = run(&["verify", "feasibility", "--dmax", "3", "--as-printed"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("[fail]"), "{}", stdout(&out));
}

#[test]
fn enumerate_counts_and_json() {
    let out = run(&["enumerate", "--dmax", "2"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("d=1: 3 classes"), "{text}");
    assert!(text.contains("d=2: 6 classes"), "{text}");

    let out = run(&["enumerate", "--dmax", "2", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 9);
}

#[test]
fn apply_validates_the_map() {
    let file = write_temp("sq.json", r#"{"dim": 2, "vertices": [[0,0],[1,0],[0,1],[1,1]]}"#);
    let not_unimodular = write_temp(
        "double.json",
        r#"{"matrix": [[2,0],[0,1]], "translation": [0,0]}"#,
    );
    let out = run(&["apply", not_unimodular.to_str().unwrap(), file.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unimodular"), "{}", stderr(&out));
}
