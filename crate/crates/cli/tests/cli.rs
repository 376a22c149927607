use std::path::PathBuf;
use std::process::{Command, Output};

fn qfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfock")).args(args).env_remove("QFOCK_THREADS").output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qfock(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Compares JSON output with `tests/golden/<name>.json`; `UPDATE_GOLDEN=1`
/// rewrites the file instead.
fn golden(name: &str, args: &[&str]) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let got = stdout(&full);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "{name} drifted from its golden file");
}

#[test]
fn golden_qbinom() {
    golden("qbinom", &["qbinom", "--p", "5", "--n", "13", "--m", "5", "--at-root"]);
}

#[test]
fn golden_weyl() {
    golden("weyl", &["weyl", "--p", "5", "--m", "3"]);
}

#[test]
fn golden_infmod() {
    golden("infmod", &["infmod", "--p", "3", "--s", "7", "--window", "12"]);
}

#[test]
fn golden_classify() {
    golden("classify", &["classify", "--p", "3", "--lambda", "-4"]);
}

#[test]
fn golden_verify() {
    golden("verify", &["verify", "--p", "3", "--bound", "3", "--which", "2", "--seed", "5"]);
}

#[test]
fn golden_selftest() {
    golden("selftest", &["selftest", "--seed", "7"]);
}

#[test]
fn qbinom_text() {
    assert_eq!(stdout(&["qbinom", "--p", "5", "--n", "13", "--m", "5", "--at-root"]), "2\n");
    assert_eq!(stdout(&["qbinom", "--p", "5", "--n", "3", "--m", "1"]), "q^2 + 1 + q^-2\n");
    assert_eq!(stdout(&["qbinom", "--p", "3", "--n", "-1", "--m", "3", "--at-root"]), "-1\n");
}

#[test]
fn weyl_text() {
    let out = stdout(&["weyl", "--p", "5", "--m", "3"]);
    assert!(out.contains("dim: 4\n"));
    assert!(out.contains("irreducible: true\n"));
    assert!(out.contains("maximal submodule: []\n"));
}

#[test]
fn infmod_text() {
    let out = stdout(&["infmod", "--p", "3", "--s", "7", "--window", "12"]);
    assert!(out.contains("submodule: V(-12)"));
    assert!(out.contains("quotient: V(-8)"));
}

#[test]
fn json_is_deterministic() {
    let args = ["--format", "json", "verify", "--p", "5", "--bound", "3", "--which", "1", "--seed", "11"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["--format", "json", "infmod", "--p", "3", "--s", "-5"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn usage_errors_exit_1_and_name_the_flag() {
    for (args, flag) in [
        (&["weyl", "--p", "4", "--m", "3"][..], "--p"),
        (&["infmod", "--p", "3", "--s", "2", "--window", "5"][..], "--window"),
        (&["verify", "--p", "3", "--which", "3"][..], "--which"),
        (&["classify", "--p", "3"][..], "--lambda"),
        (&["weyl", "--p", "3", "--m", "-1"][..], "--m"),
    ] {
        let out = qfock(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(flag), "{args:?}");
    }
    assert_eq!(qfock(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn verification_failure_exits_2_with_counterexample() {
    let out = qfock(&["verify", "--p", "3", "--bound", "2", "--which", "1", "--negate-f"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
    assert!(text.contains("lhs = "), "{text}");
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_qfock"))
        .args(["verify", "--p", "3", "--bound", "2", "--which", "2"])
        .env("QFOCK_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_qfock"))
        .args(["weyl", "--p", "3", "--m", "2"])
        .env("QFOCK_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
