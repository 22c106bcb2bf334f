//! End-to-end runs of the `qslice` binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn qslice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qslice"))
        .args(args)
        .env("QS_LOG", "error")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json report")
}

#[test]
fn classify_orderings() {
    let o = qslice(&["classify", "--n", "2", "--loops", "2", "--framing", "1", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["result"]["count"], 2);
    assert_eq!(r["result"]["expected"], 2);
    let mut orderings: Vec<String> = r["result"]["chambers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["ordering"].to_string())
        .collect();
    orderings.sort();
    assert_eq!(orderings, ["[1,2]", "[2,1]"]);
    assert_eq!(r["config"]["lambda"], "2");
    assert_eq!(r["ok"], true);
}

#[test]
fn classify_below_threshold_counts_six() {
    let o = qslice(&["classify", "--n", "3", "--lambda", "-2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("count: 6 (expected 6)\n"));
}

#[test]
fn non_integral_parameter_has_no_chambers() {
    let o = qslice(&["classify", "--n", "3", "--lambda", "-7/3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["result"]["count"], 0);
    assert_eq!(r["result"]["lambda"], "-7/3");
}

#[test]
fn modelcheck_summary_line() {
    let o = qslice(&["modelcheck", "--loops", "3", "--samples", "20", "--seed", "7", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("unipotent: 20/20, darboux: 20/20"));
}

#[test]
fn modelcheck_is_deterministic_per_seed() {
    let a = qslice(&["modelcheck", "--loops", "2", "--seed", "11"]);
    let b = qslice(&["modelcheck", "--loops", "2", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn transition_matrix_for_a_point() {
    let o = qslice(&["modelcheck", "--loops", "2", "--samples", "1", "--point", "1,2,3,-1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let m = r["result"]["transition_matrix"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    for (i, row) in m.iter().enumerate() {
        let row = row.as_array().unwrap();
        assert_eq!(row[i], "1");
        for cell in &row[..i] {
            assert_eq!(cell, "0");
        }
        assert!(row.iter().all(|c| c.is_string()));
    }
}

#[test]
fn report_round_trips_byte_identical() {
    for args in [
        &["leaves", "--n", "2"][..],
        &["classify", "--n", "3", "--lambda", "3"][..],
        &["sweep", "--n", "2", "--window", "-2:4"][..],
        &["slice", "--n", "3", "--loops", "3", "--framing", "2"][..],
    ] {
        let o = qslice(args);
        let text = stdout(&o);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        std::fs::write(&path, &text).unwrap();
        let parsed: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn sweep_matches_closed_form() {
    let o = qslice(&["sweep", "--n", "3", "--loops", "3", "--framing", "2", "--window", "-7:9"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let rows = r["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 17);
    // Gap is -3..=5 for these parameters.
    for row in rows {
        let l: i64 = row["lambda"].as_str().unwrap().parse().unwrap();
        let want = if (-3..=5).contains(&l) { 0 } else { 6 };
        assert_eq!(row["count"], want, "lambda {l}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qslice(&["classify"]).status.code(), Some(2));
    assert_eq!(qslice(&["sweep"]).status.code(), Some(2));
    assert_eq!(qslice(&["sweep", "--window", "3:1"]).status.code(), Some(2));
    assert_eq!(qslice(&["nonsense"]).status.code(), Some(2));
    assert_eq!(qslice(&["classify", "--lambda", "x/y"]).status.code(), Some(2));
    assert_eq!(qslice(&["roots", "--loops", "1"]).status.code(), Some(2));
}

#[test]
fn roots_from_quiver_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"quiver": {{"vertices": ["0", "inf"], "arrows": [["0","0"],["0","0"],["0","inf"]]}}, "bound": {{"0": 2, "inf": 1}}}}"#
    )
    .unwrap();
    let o = qslice(&["roots", "--quiver", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    let roots = r["result"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 5);
    assert!(roots.iter().any(|x| x["root"]["0"] == 2 && x["root"]["inf"] == 1 && x["p"] == 6));
}

#[test]
fn bare_quiver_file_and_bad_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"vertices": ["a"], "arrows": [["a","a"],["a","a"]]}}"#).unwrap();
    let o = qslice(&["roots", "--n", "2", "--quiver", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["roots"].as_array().unwrap().len(), 2);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "not json").unwrap();
    let o = qslice(&["roots", "--quiver", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = qslice(&["roots", "--quiver", "/nonexistent/quiver.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn full_and_reduced_chambers_agree() {
    for lambda in ["-2", "0", "3"] {
        let full = json(&qslice(&["chambers", "--n", "2", "--lambda", lambda, "--arrangement", "full"]));
        let reduced = json(&qslice(&["chambers", "--n", "2", "--lambda", lambda]));
        assert_eq!(full["result"]["bounded"], reduced["result"]["bounded"], "lambda {lambda}");
    }
}

#[test]
fn traces_attach_to_bounded_chambers() {
    let r = json(&qslice(&["chambers", "--n", "2", "--lambda", "2", "--trace", "--engine", "verified"]));
    let chambers = r["result"]["chambers"].as_array().unwrap();
    for c in chambers {
        assert_eq!(c["status"] == "bounded", c.get("trace").is_some());
    }
}

#[test]
fn flat_check_and_leaves() {
    let r = json(&qslice(&["flat-check", "--n", "3", "--loops", "3", "--framing", "2"]));
    assert_eq!(r["result"]["flat"], true);
    let r = json(&qslice(&["leaves", "--n", "2"]));
    let leaves = r["result"]["leaves"].as_array().unwrap();
    let dims: Vec<i64> = leaves.iter().map(|l| l["dim"].as_i64().unwrap()).collect();
    assert!(dims.contains(&12) && dims.contains(&8));
}

#[test]
fn jobs_flag_does_not_change_output() {
    let a = qslice(&["classify", "--n", "3", "--lambda", "4", "--jobs", "1"]);
    let b = qslice(&["classify", "--n", "3", "--lambda", "4", "--jobs", "4"]);
    let (mut ra, mut rb) = (json(&a), json(&b));
    ra["config"]["jobs"] = Value::Null;
    rb["config"]["jobs"] = Value::Null;
    assert_eq!(ra, rb);
}
