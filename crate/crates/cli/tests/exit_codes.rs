use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supertask"))
        .args(args)
        .output()
        .expect("failed to spawn binary")
}

fn systems(file: &str) -> String {
    format!("{}/../../systems/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn temp_sts(text: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".sts").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn success_writes_nothing_to_stderr() {
    let out = run(&["lamp", "--initial", "off"]);
    assert_eq!(code(&out), 0);
    assert!(out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["schedule"],
        vec!["schedule", "--step", "1", "--time", "1"],
        vec!["grandi", "--terms", "3"],
        vec![
            "grandi",
            "--terms",
            "3",
            "--cesaro",
            "--grouping",
            "fully-paired",
        ],
        vec!["grandi", "--terms", "0", "--cesaro"],
        vec!["pi-parity"],
        vec!["ordinal", "cmp", "w"],
        vec!["lamp", "--initial", "dim"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let out = run(&["eval", &systems("lamp.sts"), "--start", "nowhere"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(code(&run(&["--help"])), 0);
    let out = run(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("supertask "));
    let help = String::from_utf8(run(&["pi-parity", "--help"]).stdout).unwrap();
    assert!(help.contains("1 = even digit, 0 = odd digit"));
    let help = String::from_utf8(run(&["grandi", "--help"]).stdout).unwrap();
    assert!(help.contains("fully-paired"));
}

#[test]
fn parse_errors_exit_2() {
    let dup = temp_sts("states: a b c\nstart: a\ntransition: a -> b\ntransition: a -> c\n");
    let out = run(&["eval", dup.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("already has an outgoing transition"));

    let missing = temp_sts("states: a b\nstart: a\ntransition: a -> b\n");
    assert_eq!(
        code(&run(&["analyze", missing.path().to_str().unwrap()])),
        2
    );

    assert_eq!(code(&run(&["analyze", "/nonexistent/file.sts"])), 2);
    assert_eq!(code(&run(&["lamp", "--runtime", "w+"])), 2);
    assert_eq!(code(&run(&["ordinal", "eval", "w*0"])), 2);
    assert_eq!(code(&run(&["ordinal", "even", "x"])), 2);
    assert_eq!(code(&run(&["schedule", "--time", "one"])), 2);
    assert_eq!(
        code(&run(&["eval", &systems("lamp.sts"), "--runtime", "w^"])),
        2
    );
}

#[test]
fn domain_errors_exit_3() {
    let out = run(&["pi-parity", "--runtime", "w"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoFinitePeriod"));

    assert_eq!(code(&run(&["pi-parity", "--runtime", "w+3"])), 3);
    assert_eq!(code(&run(&["pi-parity", "--digit", "1001"])), 3);
    assert_eq!(code(&run(&["schedule", "--time", "3"])), 3);
    assert_eq!(code(&run(&["schedule", "--time", "-1/2"])), 3);
    assert_eq!(code(&run(&["schedule", "--epsilon", "0"])), 3);
    assert_eq!(code(&run(&["schedule", "--epsilon", "-1"])), 3);
    assert_eq!(code(&run(&["schedule", "--step", "0"])), 3);
}

#[test]
fn warnings_go_to_stderr_only() {
    let out = run(&["analyze", &systems("unreachable.sts")]);
    assert_eq!(code(&out), 0);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("warning: unreachable-state"));
    assert!(!String::from_utf8(out.stdout).unwrap().contains("warning"));
}

#[test]
fn max_index_is_configurable() {
    let out = run(&["pi-parity", "--max-index", "1500", "--digit", "1200"]);
    assert_eq!(code(&out), 0);
    let out = run(&["pi-parity", "--max-index", "10", "--digit", "11"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn omega_alias() {
    let out = run(&["ordinal", "eval", "ω*2+1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "w*2+1\n");
}

#[test]
fn file_default_runtime_is_used() {
    let f =
        temp_sts("states: a b\nstart: a\ntransition: a -> b\ntransition: b -> a\nruntime: w+1\n");
    let out = run(&["eval", f.path().to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("runtime: w+1\n"));
    assert!(text.contains("final: b\n"));
}
