use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ratsearch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratsearch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn fermat_list() -> PathBuf {
    fixture("fermat_points.txt", "# x^4 + y^4 = 1\n1 0 1\n-1 0 1\n0 1 1\n0 -1 1\n")
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().unwrap().keys().map(String::as_str).collect()
}

fn assert_rational(v: &Value) {
    assert_eq!(keys(v), ["num", "den"]);
    for k in ["num", "den"] {
        let s = v[k].as_str().unwrap();
        assert!(s.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()), "{s}");
    }
}

fn assert_point(v: &Value) {
    assert_eq!(keys(v), ["x", "y", "height"]);
    assert_rational(&v["x"]);
    assert_rational(&v["y"]);
    assert!(v["height"].as_str().unwrap().parse::<u64>().is_ok());
}

#[test]
fn decide_without_points() {
    let o = ratsearch(&["decide", "-e", "x^4+y^4+1", "--oracle", "height-bound:100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "NO\n");
}

#[test]
fn decide_with_witness() {
    let o = ratsearch(&["decide", "-e", "x^4+y^4-17", "--oracle", "height-bound:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["answer"], "YES");
    assert_point(&v["witness"]);
}

#[test]
fn search_fermat_with_point_list() {
    let list = fermat_list();
    let oracle = format!("list:{}", list.display());
    let args = ["search", "-e", "x^4+y^4-1", "--oracle", &oracle, "--format", "json", "--strict"];
    let o = ratsearch(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(keys(&v), ["status", "points", "max_height", "iterations"]);
    assert_eq!(v["status"], "Complete");
    assert_eq!(v["max_height"], "1");
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 4);
    points.iter().for_each(assert_point);
    for it in v["iterations"].as_array().unwrap() {
        assert_eq!(keys(it), ["p", "fiber", "center", "image_degree"]);
        assert_rational(&it["p"]);
        it["fiber"].as_array().unwrap().iter().for_each(assert_point);
        assert_eq!(keys(&it["center"]), ["a", "b"]);
        assert_rational(&it["center"]["a"]);
        assert_rational(&it["center"]["b"]);
        assert!(it["image_degree"].is_u64());
    }
    // byte-identical on a second run
    assert_eq!(ratsearch(&args).stdout, o.stdout);
}

#[test]
fn search_text_report() {
    let o = ratsearch(&["search", "-e", "x^4+y^4-1", "--oracle", "height-bound:10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("status: Complete\npoints: 4\n"), "{out}");
    assert!(out.contains("max height: 1\n"));
}

#[test]
fn equation_file_is_read() {
    let eq = fixture("fermat.eq", "x^4 + y^4 - 1\n");
    let o = ratsearch(&["decide", "--equation-file", eq.to_str().unwrap(), "--oracle", "height-bound:1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "YES (-1, 0) height 1\n");
}

#[test]
fn holzer_verb() {
    let o = ratsearch(&["holzer", "1", "1", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "no solution (Holzer bound 1)\n");
    let o = ratsearch(&["holzer", "1", "2", "3"]);
    assert_eq!(stdout(&o), "solution (1, 1, 1) (Holzer bound 2)\n");
    let o = ratsearch(&["decide", "-e", "x^2+2*y^2-3", "--oracle", "holzer"]);
    assert_eq!(stdout(&o), "YES (1, 1) height 1\n");
}

#[test]
fn transform_and_screen() {
    let o = ratsearch(&["transform", "-e", "x^4+y^4-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["p"]["num"], "-1");
    assert_eq!(v["image_degree"], 8);
    let o = ratsearch(&["screen", "-e", "x^4+y^4-1", "--at", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("(a, b) = (-1, -1) SafeCenter\nfirst safe center: (-1, -1)\n"));
    let o = ratsearch(&["screen", "-e", "x^4+y^4-1", "--at", "1", "--height-scan", "1"]);
    assert!(stdout(&o).contains("(a, b) = (0, 0) DegenerateCenter: center on C\n"));
}

#[test]
fn cap_exits() {
    let o = ratsearch(&["search", "-e", "x^4+y^4-1", "--oracle", "height-bound:10", "--max-iter", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("status: CapExceeded(MaxIterations)\n"));
    let o = ratsearch(&["search", "-e", "x^4+y^4-1", "--oracle", "height-bound:10", "--first-cap", "1", "--candidate-cap", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("status: CapExceeded(Candidate)\n"));
    let o = ratsearch(&["screen", "-e", "x^4+y^4-1", "--at", "1", "--candidate-cap", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ratsearch(&["transform", "-e", "x^4+y^4+1", "--first-cap", "20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_3() {
    for args in [
        &["decide", "-e", "x^4 + z^4 - 1", "--oracle", "height-bound:5"][..],
        &["decide", "-e", "x^4 + * y", "--oracle", "height-bound:5"],
        &["decide", "-e", "x*y - y*x", "--oracle", "height-bound:5"],
        &["decide", "-e", "x^4+y^4-1", "--oracle", "height-bound:0"],
        &["decide", "-e", "x^4+y^4-1", "--oracle", "guess"],
        &["decide", "-e", "x^4+y^4-1", "--oracle", "holzer"],
        &["decide", "--oracle", "holzer"],
        &["decide", "-e", "x^2+y^2-1", "--equation-file", "x.eq", "--oracle", "holzer"],
        &["search", "-e", "x^4+y^4-1", "--oracle", "list:/nonexistent/points.txt"],
        &["holzer", "0", "1", "1"],
        &["transform", "-e", "x^4+y^4-1", "--at", "one"],
        &["frobnicate"],
    ] {
        let o = ratsearch(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let o = ratsearch(&["decide", "-e", "x^4 + * y", "--oracle", "height-bound:5"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 6"));
}

#[test]
fn bad_point_list_reports_its_line() {
    let list = fixture("bad_points.txt", "1 0 1\n2 4 2\n");
    let oracle = format!("list:{}", list.display());
    let o = ratsearch(&["decide", "-e", "x^4+y^4-1", "--oracle", &oracle]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn help_exits_cleanly() {
    let o = ratsearch(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("search"));
}
