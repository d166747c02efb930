use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::NamedTempFile;

const FIX_B4: &str = "system\n  roots B4\n  sp a4\n  sigma a1+a2, a3+a4\nend\n";

fn sphsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphsys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn sphsys_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sphsys"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn info_on_b4() {
    let f = file(FIX_B4);
    let o = sphsys(&["info", path(&f)]);
    assert!(o.status.success());
    let s = stdout(&o);
    for want in [
        "rank       2",
        "defect     1",
        "cuspidal   yes",
        "reductive  no",
        "primitive  yes",
    ] {
        assert!(s.contains(want), "missing {want:?} in\n{s}");
    }
}

#[test]
fn info_json_keys() {
    let f = file(FIX_B4);
    let o = sphsys(&["--format", "json", "info", path(&f)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["defect"], 1);
    assert_eq!(v["flags"]["primitive"], true);
    assert_eq!(v["colors"].as_array().unwrap().len(), 3);
    assert_eq!(v["matrix"][1], serde_json::json!([1, -1]));
}

#[test]
fn quotient_prints_block() {
    let f = file(FIX_B4);
    let o = sphsys(&["quotient", path(&f), "--colors", "D1"]);
    assert!(o.status.success());
    let want = "system\n  roots B4\n  sp a1,a4\n  sigma a3+a4\nend\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn quotient_by_unknown_color_is_input_error() {
    let f = file(FIX_B4);
    let o = sphsys(&["quotient", path(&f), "--colors", "D9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn garbage_exits_two() {
    let o = sphsys_stdin(&["info", "-"], "this is not a system\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn invalid_system_exits_two_but_validate_reports() {
    // 2*a1 cannot sit next to a1 in sp.
    let bad = "system\n  roots A2\n  sp a1\n  sigma 2*a1\nend\n";
    let f = file(bad);
    assert_eq!(sphsys(&["info", path(&f)]).status.code(), Some(2));
    let o = sphsys(&["validate", path(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation"));
}

#[test]
fn validate_accepts_fixture_from_stdin() {
    let o = sphsys_stdin(&["validate", "-"], FIX_B4);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "ok");
}

#[test]
fn primitive_exit_codes() {
    let f = file(FIX_B4);
    assert!(sphsys(&["primitive", path(&f)]).status.success());
    let product = file("system\n  roots A1 A1\n  sp -\n  sigma 2*a1, 2*a2\nend\n");
    let o = sphsys(&["primitive", path(&product)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not primitive"));
}

#[test]
fn enumerate_counts_and_streams() {
    let o = sphsys(&["enumerate", "A2", "--count"]);
    assert_eq!(stdout(&o).trim(), "12");
    let o = sphsys(&["enumerate", "A1"]);
    assert_eq!(stdout(&o).matches("system").count(), 4);
    let o = sphsys(&["enumerate", "A2", "--limit", "3"]);
    assert_eq!(stdout(&o).matches("end").count(), 3);
}

#[test]
fn enumerate_mod_aut_is_smaller() {
    let all: usize = stdout(&sphsys(&["enumerate", "A2", "--count"]))
        .trim()
        .parse()
        .unwrap();
    let modded: usize = stdout(&sphsys(&["enumerate", "A2", "--count", "--mod-aut"]))
        .trim()
        .parse()
        .unwrap();
    assert!(modded < all);
    let b2: usize = stdout(&sphsys(&["enumerate", "B2", "--count"]))
        .trim()
        .parse()
        .unwrap();
    let b2_modded: usize = stdout(&sphsys(&["enumerate", "B2", "--count", "--mod-aut"]))
        .trim()
        .parse()
        .unwrap();
    assert_eq!(b2, b2_modded);
}

#[test]
fn enumerate_rank_cap() {
    let o = sphsys(&["enumerate", "A7", "--count"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_tree_outline() {
    let product = file("system\n  roots A1 A1\n  sp -\n  sigma 2*a1, 2*a2\nend\n");
    let o = sphsys(&["reduce", path(&product), "--tree"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.lines().next().unwrap().starts_with("- "));
    assert!(s.lines().count() > 1, "{s}");
}

#[test]
fn localize_by_simple_roots() {
    let f = file(FIX_B4);
    let o = sphsys(&["localize", path(&f), "--simple", "a3,a4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&o),
        "system\n  roots B2\n  sp a2\n  sigma a1+a2\nend\n"
    );
}

#[test]
fn catalog_lists_entries() {
    let o = sphsys(&["catalog", "A1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("2*a1"), "{s}");
}

#[test]
fn enumerate_json_is_one_document() {
    let o = sphsys(&["--format", "json", "enumerate", "A2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let systems = v["systems"].as_array().unwrap();
    assert_eq!(systems.len(), 12);
    assert_eq!(v["truncated"], false);
    assert_eq!(
        systems
            .iter()
            .filter(|s| s["flags"]["shared_colors"] == true)
            .count(),
        1
    );
    let o = sphsys(&["--format", "json", "enumerate", "B2", "--count"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 19);
}
