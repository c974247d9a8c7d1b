use std::path::PathBuf;
use std::process::{Command, Output};

use qhsa::report::Report;

fn qhsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhsa")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qhsa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn explain_strips_detail() {
    let o = qhsa(&["explain", "onh.tau-omega0[super:i;n=3]"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("onh.tau-omega0: "));

    let o = qhsa(&["explain", "mackey"]);
    assert!(stdout(&o).contains("  mackey.dim: "));

    assert_eq!(qhsa(&["explain", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn suites_lists_registry() {
    let out = stdout(&qhsa(&["suites"]));
    for s in qhsa::config::Suite::ALL {
        assert!(out.contains(s.name()), "{s}");
    }
}

#[test]
fn unknown_suite_is_an_error() {
    let o = qhsa(&["run", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn report_and_sidecar() {
    let out = scratch("onh.toml");
    let o = qhsa(&["run", "--config", "bundled:even", "--suite", "onh,datum-validate", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains(" checks, 0 failed"));
    let report = Report::from_toml(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.report.data, ["even"]);
    assert_eq!(report.report.suites, ["datum-validate", "onh"]);
    assert_eq!(report.report.checks, report.check.len());
    assert!(report.check.windows(2).all(|w| w[0].id < w[1].id));
    let timings = std::fs::read_to_string(qhsa::report::timings_path(&out)).unwrap();
    assert_eq!(timings.lines().count(), report.check.len());
}

#[test]
fn validate_data_files() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    for name in qhsa::data::NAMES {
        let o = qhsa(&["validate", "--config", &format!("{dir}/{name}.toml")]);
        assert!(o.status.success(), "{name}");
    }

    let bad = scratch("bad.toml");
    std::fs::write(
        &bad,
        "name = \"bad\"\nmatrix = [[2, -1], [0, 2]]\n[[vertex]]\nname = \"i\"\nparity = 0\nr = 1\n[[vertex]]\nname = \"j\"\nparity = 0\nr = 1\n",
    )
    .unwrap();
    let o = qhsa(&["validate", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("bad: fails axiom"));
}

#[test]
fn normal_form_is_idempotent() {
    for expr in ["t(1)*x(1)*e(i,i)", "t(1)*t(1)*e(i,j)", "x(2)*t(1)*e(j,j) + 3*e(j,j)"] {
        let once = stdout(&qhsa(&["normal-form", expr])).trim().to_string();
        let twice = stdout(&qhsa(&["normal-form", &once])).trim().to_string();
        assert_eq!(once, twice, "{expr}");
    }
    assert_eq!(qhsa(&["normal-form", "tau1"]).status.code(), Some(2));
}

#[test]
fn mult_matches_concatenation() {
    let prod = stdout(&qhsa(&["mult", "x(1)*e(i,i)", "t(1)*e(i,i)"]));
    let joined = stdout(&qhsa(&["normal-form", "x(1)*t(1)*e(i,i)"]));
    assert_eq!(prod, joined);
}
