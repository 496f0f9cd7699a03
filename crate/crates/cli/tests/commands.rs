use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use povm_decomp::files::DecompositionFile;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn povm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_povm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_record(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1, "stderr: {text}");
    serde_json::from_str(lines[0]).expect("stderr line is JSON")
}

fn decompose_to(dir: &TempDir, input: &str, extra: &[&str]) -> (Output, PathBuf) {
    let out_path = dir.path().join(format!("{input}.out.json"));
    let input_path = data(input);
    let mut args = vec![
        "decompose",
        input_path.to_str().unwrap(),
        "--output",
        out_path.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    (povm(&args), out_path)
}

fn read_decomposition(path: &Path) -> DecompositionFile {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn bb84_decomposes_into_two_halves() {
    let dir = TempDir::new().unwrap();
    let (out, path) = decompose_to(&dir, "bb84.json", &[]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("terms: 2"));
    let file = read_decomposition(&path);
    assert_eq!(file.terms.len(), 2);
    for t in &file.terms {
        assert!((t.probability - 0.5).abs() < 1e-12);
        assert_eq!(t.outcomes.len(), 2);
    }
}

#[test]
fn trine_is_a_single_term() {
    let dir = TempDir::new().unwrap();
    let (out, path) = decompose_to(&dir, "trine.json", &[]);
    assert_eq!(code(&out), 0);
    let file = read_decomposition(&path);
    assert_eq!(file.terms.len(), 1);
    assert_eq!(file.terms[0].probability, 1.0);
}

#[test]
fn default_output_path_is_next_to_input() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("bb84.json");
    fs::copy(data("bb84.json"), &input).unwrap();
    let out = povm(&["decompose", input.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("bb84.decomposition.json").exists());
}

#[test]
fn negative_element_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let (out, path) = decompose_to(&dir, "not_psd.json", &[]);
    assert_eq!(code(&out), 3);
    assert!(!path.exists());
    let record = stderr_record(&out);
    assert_eq!(record["error"], "NotPsd");
    assert!(record["message"].as_str().unwrap().contains("element 1"));
}

#[test]
fn malformed_json_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"dim\": 2, \"elements\": [").unwrap();
    let out = povm(&["check-extremal", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(stderr_record(&out)["error"], "Parse");

    let missing = dir.path().join("missing.json");
    let out = povm(&["check-extremal", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(stderr_record(&out)["error"], "Io");
}

#[test]
fn unknown_strategy_is_a_usage_error() {
    let input = data("bb84.json");
    let out = povm(&["decompose", input.to_str().unwrap(), "--strategy", "best"]);
    assert_eq!(code(&out), 2);
    assert_eq!(stderr_record(&out)["error"], "Usage");
}

#[test]
fn decompositions_verify_against_their_input() {
    let dir = TempDir::new().unwrap();
    for name in [
        "bb84.json",
        "trine.json",
        "pentagon.json",
        "coin_toss.json",
        "stern_gerlach.json",
    ] {
        for strategy in ["first", "fewest", "maxq"] {
            let (out, path) = decompose_to(&dir, name, &["--strategy", strategy]);
            assert_eq!(code(&out), 0, "{name} {strategy}");
            let check = povm(&[
                "verify",
                data(name).to_str().unwrap(),
                path.to_str().unwrap(),
            ]);
            assert_eq!(code(&check), 0, "{name} {strategy}: {}", stdout(&check));
            assert!(stdout(&check).starts_with("max residual"));
        }
    }
}

#[test]
fn perturbed_probability_fails_verification() {
    let dir = TempDir::new().unwrap();
    let (_, path) = decompose_to(&dir, "pentagon.json", &[]);
    let mut file = read_decomposition(&path);
    file.terms[0].probability += 1e-3;
    fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = povm(&[
        "verify",
        data("pentagon.json").to_str().unwrap(),
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("above threshold"));
}

#[test]
fn hand_written_three_trine_decomposition_verifies() {
    let out = povm(&[
        "verify",
        data("pentagon.json").to_str().unwrap(),
        data("pentagon.three_trines.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn dimension_mismatch_between_files_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let (_, path) = decompose_to(&dir, "bb84.json", &[]);
    let mut file = read_decomposition(&path);
    file.dim = 3;
    fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = povm(&[
        "verify",
        data("bb84.json").to_str().unwrap(),
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn extremality_checks() {
    let out = povm(&[
        "check-extremal",
        data("stern_gerlach.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("reason: Extremal"));

    let out = povm(&["check-extremal", data("pentagon.json").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("reason: LinearlyDependentElements"));

    // The witness for BB84 is one of its two Stern-Gerlach halves.
    let out = povm(&["check-extremal", data("bb84.json").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.contains("witness: labels [z+, z-] with weights [1, 1]")
            || text.contains("witness: labels [x+, x-] with weights [1, 1]"),
        "{text}"
    );
}

#[test]
fn enumerate_lists_pentagon_trines() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("catalog.json");
    let out = povm(&[
        "enumerate",
        data("pentagon.json").to_str().unwrap(),
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("5 columns, 5 vertices"));
    let catalog: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let vertices = catalog["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 5);
    for v in vertices {
        assert_eq!(v["outcome_count"], 3);
        // Weights 2/sqrt 5 and twice 1 - 1/sqrt 5.
        let s5 = 5f64.sqrt();
        let q = 4.0 / 5.0 + 2.0 * (1.0 - 1.0 / s5).powi(2);
        assert!((v["q"].as_f64().unwrap() - q).abs() < 1e-12);
    }
}

#[test]
fn enumeration_cap_exits_four() {
    let input = data("pentagon.json");
    for args in [
        vec!["enumerate", input.to_str().unwrap(), "--enum-cap", "4"],
        vec![
            "decompose",
            input.to_str().unwrap(),
            "--strategy",
            "maxq",
            "--enum-cap",
            "4",
            "--output",
            "/dev/null",
        ],
    ] {
        let out = povm(&args);
        assert_eq!(code(&out), 4);
        assert_eq!(stderr_record(&out)["error"], "TooLarge");
    }
}

#[test]
fn output_is_deterministic_and_reserializes_identically() {
    let dir = TempDir::new().unwrap();
    let (_, first) = decompose_to(&dir, "pentagon.json", &["--strategy", "maxq"]);
    let a = fs::read_to_string(&first).unwrap();
    let (_, second) = decompose_to(&dir, "pentagon.json", &["--strategy", "maxq"]);
    let b = fs::read_to_string(&second).unwrap();
    assert_eq!(a, b);
    let file: DecompositionFile = serde_json::from_str(&a).unwrap();
    let mut again = serde_json::to_string_pretty(&file).unwrap();
    again.push('\n');
    assert_eq!(again, a);
}

#[test]
fn tolerance_flag_relaxes_validation() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("rough.json");
    // Completeness off by 1e-6.
    fs::write(
        &input,
        r#"{"dim": 2, "elements": [[[[1.000001, 0], [0, 0]], [[0, 0], [0, 0]]], [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]]}"#,
    )
    .unwrap();
    let out_path = dir.path().join("rough.out.json");
    let strict = povm(&[
        "decompose",
        input.to_str().unwrap(),
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&strict), 3);
    assert_eq!(stderr_record(&strict)["error"], "NotComplete");
    let relaxed = povm(&[
        "decompose",
        input.to_str().unwrap(),
        "--tol",
        "1e-5",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&relaxed), 0);
}
