use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn noise_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noise-lab"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_is_reproducible() {
    let a = noise_lab(&["verify", "examples/two-coins.json", "--seed", "0"]);
    let b = noise_lab(&["verify", "examples/two-coins.json", "--seed", "0"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("summary: "));
    assert!(!text.contains("FAIL"));
}

#[test]
fn seeds_change_sampled_details_only_through_the_seed() {
    let a = noise_lab(&["verify", "examples/cells-2-3.json", "--seed", "5", "--only", "chaos"]);
    let b = noise_lab(&["verify", "examples/cells-2-3.json", "--seed", "5", "--only", "chaos"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed: 5"));
}

#[test]
fn four_coin_defect() {
    let out = noise_lab(&["verify", "examples/four-coins.json", "--only", "chaos"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let line = text.lines().find(|l| l.contains("chaos.defect[pairs,psi]")).unwrap();
    assert!(line.contains("PASS") && line.contains("δ² = 1,"), "{line}");
    assert!(!line.contains("tight at 0"), "{line}");

    let out = noise_lab(&["chaos", "examples/four-coins.json", "--vector", "psi"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("first chaos dimension: 4"));
    assert!(text.contains("classification: Classical"));
    assert!(text.contains("psi on pairs: δ² = 1, δ = 1.000000000000, defect bound holds"));
}

#[test]
fn geometry_without_embedding_is_skipped() {
    let out = noise_lab(&["verify", "examples/two-coins.json", "--only", "geometry", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SKIP  geometry.embedding  no embedding in config"));
}

#[test]
fn geometry_with_embedding() {
    let out = noise_lab(&["verify", "examples/interval.json", "--only", "geometry"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS  geometry.closure_test"));
}

#[test]
fn json_report() {
    let out = noise_lab(&["verify", "examples/cells-2-3.json", "--only", "laws", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["points"], 6);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn float_backend() {
    let out = noise_lab(&["verify", "examples/cells-2-3.json", "--only", "laws", "--backend", "float"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("backend: float"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_sum = write_config(dir.path(), "sum.json", r#"{"cells": [{"probs": ["1/2", "1/3"]}]}"#);
    let out = noise_lab(&["verify", bad_sum.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cells[0].probs: probabilities sum to 5/6 ≠ 1"), "{}", stderr(&out));

    let broken = write_config(dir.path(), "broken.json", "{\"cells\": [\n  {\"probs\": [\"1/2\" \"1/2\"]}\n]}");
    let out = noise_lab(&["verify", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let unknown = write_config(dir.path(), "unknown.json", r#"{"cells": [], "colour": 1}"#);
    let out = noise_lab(&["verify", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("colour"), "{}", stderr(&out));

    let dyadic = write_config(
        dir.path(),
        "dyadic.json",
        r#"{"cells": [{"probs": ["1/2", "1/2"]}], "embedding": {"points": ["1/4"]}}"#,
    );
    let out = noise_lab(&["verify", dyadic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("embedding.points"), "{}", stderr(&out));

    let out = noise_lab(&["verify", "does/not/exist.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = noise_lab(&["spectrum", "examples/two-coins.json", "--vector", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nope"));
    let out = noise_lab(&["verify", "examples/two-coins.json", "--only", "everything"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn strict_mode_reports_resource_skips() {
    let dir = tempfile::tempdir().unwrap();
    let cells = vec![r#"{"probs": ["1/2", "1/2"]}"#; 13].join(", ");
    let big = write_config(dir.path(), "big.json", &format!(r#"{{"cells": [{cells}]}}"#));
    let path = big.to_str().unwrap();
    let out = noise_lab(&["verify", path, "--only", "spectrum"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SKIP"));
    let out = noise_lab(&["verify", path, "--only", "spectrum", "--strict"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn spectrum_table_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("psi.csv");
    let out = noise_lab(&["spectrum", "examples/two-coins.json", "--vector", "psi", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("total mass: 14"), "{text}");
    let csv = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines,
        vec![
            "atom,multiplicity,canonical_mass,canonical_mass_decimal,spectral_mass,spectral_mass_decimal",
            "∅,1,1/4,0.250000000000,9,9.00000000000",
            "{1},1,1/4,0.250000000000,1,1.00000000000",
            "{2},1,1/4,0.250000000000,0,0",
            "\"{1,2}\",1,1/4,0.250000000000,4,4.00000000000",
        ]
    );
}
