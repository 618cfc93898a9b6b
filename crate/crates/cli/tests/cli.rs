//! End-to-end checks of the command-line surface: exit codes, payload
//! round-trips, and byte-determinism of reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_b3rep"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn components_lists_supported_and_unsupported() {
    let out = run(&["components", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("2,2:2,1,1"));
    assert!(text.contains("unsupported (g = -1)"));
}

#[test]
fn plan_reports_parameters_and_handles_unsupported() {
    let out = run(&["plan", "--sigma", "3,2:2,2,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(json["n_sigma"], 4);
    assert_eq!(json["parameters"].as_array().unwrap().len(), 5);

    let out = run(&["plan", "--sigma", "2,2:2,2,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("unsupported"));

    let out = run(&["plan", "--sigma", "1,2:1,1,1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn build_verify_round_trip() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("b3rep_cli_test_rep.json");
    let out = run(&[
        "build",
        "--sigma",
        "3,2:2,2,1",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(json["braid"], true);
    assert_eq!(json["central"], true);
    assert_eq!(json["burnside"], 25);
    std::fs::remove_file(&path).ok();
}

#[test]
fn build_over_the_rationals_verifies() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("b3rep_cli_test_qrho.json");
    let out = run(&[
        "build",
        "--sigma",
        "2,1:1,1,1",
        "--field",
        "qrho",
        "--seed",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    std::fs::remove_file(&path).ok();
}

#[test]
fn rank_command_passes_on_the_known_component() {
    let out = run(&["rank", "--sigma", "2,1:1,1,1", "--trials", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(json["generic_rank"], 2);
}

#[test]
fn sweep_is_byte_deterministic_and_csv_framed() {
    let a = run(&["sweep", "--from", "3", "--to", "4", "--trials", "1", "--format", "json"]);
    let b = run(&["sweep", "--from", "3", "--to", "4", "--trials", "1", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_of(&a), stdout_of(&b));

    let seq = run(&[
        "sweep", "--from", "3", "--to", "4", "--trials", "1", "--format", "json", "--sequential",
    ]);
    assert_eq!(stdout_of(&a), stdout_of(&seq));

    let csv = run(&["sweep", "--from", "3", "--to", "4", "--trials", "1", "--format", "csv"]);
    let text = stdout_of(&csv);
    assert!(text.starts_with(
        "sigma,n,n_sigma,case,params,detB_ok,braid,central,burnside,rank_c2c3,rank_b3,status"
    ));
    assert!(text.contains("\"2,1:1,1,1\",3,2,greater"));
}

#[test]
fn env_var_overrides_the_default_prime() {
    let out = bin()
        .args(["build", "--sigma", "2,1:1,1,1", "--seed", "0"])
        .env("BRAID_DEFAULT_PRIME", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(json["field"], "fp:7");

    let out = bin()
        .args(["build", "--sigma", "2,1:1,1,1"])
        .env("BRAID_DEFAULT_PRIME", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_config_exits_three() {
    assert_eq!(run(&["components", "--n", "1"]).status.code(), Some(3));
    assert_eq!(run(&["sweep", "--from", "5", "--to", "3"]).status.code(), Some(3));
    assert_eq!(
        run(&["build", "--sigma", "2,1:1,1,1", "--field", "fp:6"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["rank", "--sigma", "2,1:1,1,1", "--mode", "x"]).status.code(), Some(3));
    assert_eq!(run(&["nonsense"]).status.code(), Some(3));
}

#[test]
fn quiver_simple_and_sys_canon_payloads() {
    let dir = std::env::temp_dir();

    // the two-dimensional family at q=2 over F7, as a doubled quiver payload
    use b3rep::linalg::Matrix;
    use b3rep::quiver::{rep_to_json, sys_to_json, westbury_rep, LinearSystem};
    use b3rep::scalars::make_prime_field;
    use b3rep::validate_sigma;
    let f7 = make_prime_field(7).unwrap();
    let sigma = validate_sigma(1, 1, 1, 1, 0).unwrap();
    let b = Matrix::from_i64_rows(f7, &[&[2, 1], &[1, 1]]);
    let rep = westbury_rep(&b, &sigma).unwrap();
    let qpath = dir.join("b3rep_cli_test_quiver.json");
    std::fs::write(&qpath, serde_json::to_string(&rep_to_json(&rep)).unwrap()).unwrap();
    let out = run(&["quiver", "simple", qpath.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(json["simple"], true);
    std::fs::remove_file(&qpath).ok();

    // canonical form of a cyclic system
    let sys = LinearSystem::new(
        Matrix::from_i64_rows(f7, &[&[1, 0], &[0, 2]]),
        Matrix::from_i64_rows(f7, &[&[1], &[1]]),
        Matrix::from_i64_rows(f7, &[&[1, 0]]),
    )
    .unwrap();
    let spath = dir.join("b3rep_cli_test_sys.json");
    std::fs::write(&spath, serde_json::to_string(&sys_to_json(&sys)).unwrap()).unwrap();
    let out = run(&["sys", "canon", spath.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // companion form: first column (0, 1)
    assert_eq!(json["a"]["entries"][0], "0");
    assert_eq!(json["a"]["entries"][2], "1");
    std::fs::remove_file(&spath).ok();

    // non-cyclic system exits 2
    let sys = LinearSystem::new(
        Matrix::identity(f7, 2),
        Matrix::from_i64_rows(f7, &[&[1], &[0]]),
        Matrix::from_i64_rows(f7, &[&[0, 1]]),
    )
    .unwrap();
    let npath = dir.join("b3rep_cli_test_noncyclic.json");
    std::fs::write(&npath, serde_json::to_string(&sys_to_json(&sys)).unwrap()).unwrap();
    let out = run(&["sys", "canon", npath.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&npath).ok();
}
