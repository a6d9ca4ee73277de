use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_c3-remodel"))
}

fn run(args: &[&str], cache: &std::path::Path) -> Output {
    bin()
        .args(args)
        .env("C3_REMODEL_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fg_range_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["fg", "--genus", "2..4", "--framing", "1", "--format", "csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "genus,framing,value,matches\n2,1,1/5760,true\n3,1,-1/1451520,true\n4,1,1/87091200,true\n"
    );
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["fg", "--genus", "2..3", "--framing", "-1/2", "--format", "json"],
        vec!["wgn", "--genus", "1", "--n-points", "2", "--framing", "symbolic"],
    ] {
        let cold = run(&args, dir.path());
        assert_eq!(cold.status.code(), Some(0));
        let entries = fs::read_dir(dir.path()).unwrap().count();
        assert!(entries > 0, "cold run populated the cache");
        let warm = run(&args, dir.path());
        assert_eq!(warm.status.code(), Some(0));
        assert_eq!(cold.stdout, warm.stdout);
        let uncached = bin().args(&args).arg("--no-cache").output().unwrap();
        assert_eq!(cold.stdout, uncached.stdout);
    }
}

#[test]
fn cache_dir_flag_wins_over_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = run(
        &["fg", "--genus", "2", "--framing", "3", "--cache-dir", flag_dir.path().to_str().unwrap()],
        env_dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(env_dir.path()).unwrap().count(), 0);
    assert_eq!(fs::read_dir(flag_dir.path()).unwrap().count(), 1);
}

#[test]
fn wgn_emits_zeta_basis_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["wgn", "--genus", "1", "--n-points", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["g"], 1);
    assert_eq!(v["n"], 1);
    assert_eq!(v["basis"], "zeta");
    assert_eq!(v["framing"], "symbolic");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["b"], serde_json::json!([0]));
    assert_eq!(entries[1]["b"], serde_json::json!([1]));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fg.csv");
    let o = run(
        &["fg", "--genus", "2", "--framing", "1", "--format", "csv", "--out", out.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(out).unwrap(), "genus,framing,value,matches\n2,1,1/5760,true\n");
}

#[test]
fn verify_suite_json_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["verify", "--suite", "fp", "--genus-max", "3", "--framing", "2", "--format", "json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "fp");
    assert_eq!(v["status"], "pass");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(args, dir.path()).status.code();
    assert_eq!(code(&["fg", "--genus", "1"]), Some(2));
    assert_eq!(code(&["fg", "--genus", "2", "--framing", "0"]), Some(2));
    assert_eq!(code(&["fg", "--genus", "2", "--framing", "-1"]), Some(2));
    assert_eq!(code(&["fg", "--genus", "2", "--framing", "x/y"]), Some(2));
    assert_eq!(code(&["verify", "--suite", "unknown"]), Some(2));
    assert_eq!(code(&["wgn", "--genus", "0", "--n-points", "1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(
        code(&["fg", "--genus", "4", "--framing", "1", "--order-margin", "-10", "--no-cache"]),
        Some(3)
    );
    assert_eq!(code(&["--help"]), Some(0));
}
