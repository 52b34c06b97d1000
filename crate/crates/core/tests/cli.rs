use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const CAP: &str = r#"{"property": {"kind": "balanced_linear_equation", "coefficients": [1,1,1], "k": 3, "field": {"p": 3}, "n": 2}, "mode": "exact"}"#;
const CAP3: &str = r#"{"property": {"kind": "balanced_linear_equation", "coefficients": [1,1,1], "k": 3, "field": {"p": 3}, "n": 3}, "mode": "random_restart", "seed": 11}"#;

fn prlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prlab")).args(args).env_remove("PRLAB_BUDGET").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("prlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn success_prints_compact_json_and_a_manifest() {
    let out = prlab(&["lattice", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(stdout.trim().lines().count(), 1);
    assert_eq!(json(&out)["size"], 15);
    let manifest: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(manifest["tool"], "prlab");
    assert_eq!(manifest["exit_code"], 0);
    assert_eq!(manifest["invocation"]["command"], "lattice");
}

#[test]
fn human_output_is_pretty() {
    let out = prlab(&["--human", "bound", "obtuse", "--n", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout.clone()).unwrap().lines().count() > 3);
    assert_eq!(json(&out)["value"], "19");
}

#[test]
fn exit_codes() {
    // a vanishing diagonal is a failed check
    let out = prlab(&["indicator", "--config", r#"{"k": 3, "field": {"p": 3}, "generator": {"kind": "rank", "r": 1}}"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = prlab(&["selftest", "--level", "quick", "--inject-fault", "bell"]);
    assert_eq!(out.status.code(), Some(2));
    let failures = json(&out)["failures"].clone();
    assert!(failures.as_array().unwrap().iter().any(|f| f.as_str().unwrap().starts_with("bell.")));

    let out = prlab(&["lattice", "--k", "20"]);
    assert_eq!(out.status.code(), Some(3));
    let out = prlab(&["search", "--config", &CAP.replace("\"mode\"", "\"node_budget\": 1, \"mode\"")]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["proof_status"], "lower_bound_only");

    let out = prlab(&["bound", "obtuse", "--n", "2", "--q", "6"]);
    assert_eq!(out.status.code(), Some(4));
    let out = prlab(&["search", "--config", r#"{"property": {"kind": "nope"}}"#]);
    assert_eq!(out.status.code(), Some(4));
    let out = prlab(&["search", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn budget_environment_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_prlab"))
        .args(["lattice", "--k", "3"])
        .env("PRLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let manifest: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(manifest["budget_override"], 10);
}

#[test]
fn config_from_file_and_stdin() {
    let path = scratch("cap.json");
    std::fs::write(&path, CAP).unwrap();
    let from_file = prlab(&["search", "--config", path.to_str().unwrap()]);
    assert_eq!(json(&from_file)["size"], 4);

    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_prlab"))
        .args(["search", "--config", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(CAP.as_bytes()).unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn output_does_not_depend_on_threads() {
    for config in [CAP, CAP3] {
        let one = prlab(&["--threads", "1", "search", "--config", config]);
        let four = prlab(&["--threads", "4", "search", "--config", config]);
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout);
    }
    let one = prlab(&["--threads", "1", "sandwich", "--config", CAP]);
    let four = prlab(&["--threads", "4", "sandwich", "--config", CAP]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json(&one)["consistent"], true);
}

#[test]
fn manifest_replays_byte_identically() {
    let manifest = scratch("manifest.json");
    let config = scratch("cap3.json");
    std::fs::write(&config, CAP3).unwrap();
    let first = prlab(&["--manifest", manifest.to_str().unwrap(), "search", "--config", config.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert!(first.stderr.is_empty());
    // the manifest carries the configuration itself, not the path
    std::fs::remove_file(&config).unwrap();
    let recorded: Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(recorded["seed"], 11);
    let inlined: Value = serde_json::from_str(recorded["invocation"]["config"].as_str().unwrap()).unwrap();
    assert_eq!(inlined["seed"], 11);

    let replay = prlab(&["replay", "--from", manifest.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    let r = json(&replay);
    assert_eq!(r["identical"], true);
    assert_eq!(r["output"].to_string().as_bytes(), first.stdout.trim_ascii_end());

    let mut tampered = recorded.clone();
    tampered["output_sha256"] = Value::from("00");
    std::fs::write(&manifest, tampered.to_string()).unwrap();
    let replay = prlab(&["replay", "--from", manifest.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(2));
    assert_eq!(json(&replay)["identical"], false);
}

#[test]
fn every_subcommand_runs() {
    let verify = r#"{"property": {"kind": "balanced_linear_equation", "coefficients": [1,1,1], "k": 3, "field": {"p": 3}, "n": 2}, "check": "semantics"}"#;
    let cases: Vec<Vec<&str>> = vec![
        vec!["lattice", "--k", "3", "--no-mobius"],
        vec!["indicator", "--config", r#"{"k": 4, "generator": {"kind": "distinctness"}}"#],
        vec!["verify", "--config", verify],
        vec!["bound", "linear", "--n", "4", "--p", "3", "--k", "3", "--m", "3"],
        vec!["bound", "identifier-exponent", "--k", "3", "--m", "2", "--deg-g", "2", "--q", "5"],
        vec!["bound", "poset", "--k", "5", "--r", "2"],
        vec!["bound", "markov", "--n", "3", "--p", "3", "--m", "3", "--x", "1/2"],
        vec!["gamma", "--p", "3,5", "--m", "3,4"],
        vec!["search", "--config", CAP],
        vec!["sandwich", "--config", CAP],
        vec!["selftest"],
    ];
    for args in cases {
        let out = prlab(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        json(&out);
    }
}
