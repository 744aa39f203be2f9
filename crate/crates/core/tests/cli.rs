use std::process::{Command, Output};

fn supercat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercat"))
        .args(args)
        .env_remove("SUPERCAT_SUITES")
        .env_remove("SUPERCAT_PRIMES")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_exact_values() {
    for (args, want) in [
        (&["compute", "supercatalan", "2", "3"][..], "12"),
        (&["compute", "supercatalan", "1", "4"][..], "28"),
        (&["compute", "catalan", "0"][..], "1"),
        (&["compute", "catalan", "6"][..], "132"),
        (&["compute", "centralbinom", "5"][..], "252"),
    ] {
        let out = supercat(args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out).trim(), want, "{args:?}");
    }
}

#[test]
fn compute_rejects_malformed_arguments() {
    for args in [
        &["compute", "catalan", "-1"][..],
        &["compute", "supercatalan", "2"][..],
        &["compute", "catalan", "x"][..],
        &["compute", "fibonacci", "3"][..],
    ] {
        let out = supercat(args);
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr).to_string();
        assert!(
            err.contains("Usage") || err.contains("--help"),
            "{args:?}: {err}"
        );
    }
}

#[test]
fn csv_report_to_file() {
    let dir = std::env::temp_dir().join(format!("supercat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("thm.csv");
    let out = supercat(&[
        "report",
        "--primes",
        "3..20",
        "--suites",
        "thm11,thm12",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("suite,equation,prime_or_index,lhs,rhs,pass,witness")
    );
    assert_eq!(lines.next(), Some("thm11,double-sum,3,0,0,true,"));
    // 7 odd primes for thm11, 6 of them >= 5 for thm12
    assert_eq!(csv.lines().count(), 1 + 7 + 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn env_overrides_flags_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_supercat"))
        .args(["report"])
        .env("SUPERCAT_PRIMES", "3..7")
        .env("SUPERCAT_SUITES", "thm11")
        .env("SUPERCAT_FORMAT", "json")
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["summary"]["total"], 3);
    assert_eq!(json["config"]["prime_max"], 7);
}

#[test]
fn empty_suite_list_gives_empty_report() {
    let out = supercat(&["report", "--suites", "none"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["records"].as_array().unwrap().len(), 0);
    assert_eq!(json["summary"]["failed"], 0);
}

#[test]
fn text_report_shows_witness_on_self_test() {
    let out = supercat(&[
        "verify",
        "--primes",
        "5..13",
        "--suites",
        "thm11",
        "--self-test",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("failures:"));
    assert!(text.contains("self-test/shifted-double-sum"));
}

#[test]
fn invalid_configuration_is_an_error() {
    for args in [
        &["verify", "--primes", "2..10"][..],
        &["verify", "--primes", "10"][..],
        &["verify", "--suites", "thm99"][..],
        &["verify", "--n-max", "500"][..],
        &["verify", "--format", "xml"][..],
    ] {
        let out = supercat(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains("error"),
            "{args:?}"
        );
    }
}
