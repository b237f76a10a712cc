//! The `rtp` binary end to end: exit codes, output placement and shipped fixtures.

use std::path::Path;
use std::process::{Command, Output};

use rtp::harness::{fixture_dir, generate};
use rtp::report::VerificationReport;

fn rtp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtp"))
        .args(args)
        .env("RTP_FIXTURES", fixture_dir())
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> VerificationReport {
    serde_json::from_slice(&out.stdout).expect("a report on stdout")
}

#[test]
fn shipped_fixtures_are_current() {
    for (rel, text) in generate() {
        let on_disk = std::fs::read_to_string(fixture_dir().join(&rel)).unwrap_or_default();
        assert!(on_disk == text, "{rel} is stale; run `rtp fixtures write`");
    }
}

#[test]
fn validate_exit_codes() {
    let ok = rtp(&["validate", "families/compatible.json"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(report(&ok).pass);

    let bad = rtp(&["family", "validate", "families/corrupted_projection.json"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("v1/projection"));
    assert!(!report(&bad).pass);

    for args in [&["validate", "families/malformed.json"][..], &["validate", "missing.json"], &["frobnicate"]] {
        assert_eq!(rtp(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn group_fixtures_validate() {
    for g in ["c2", "s3", "gl2_f2", "gl2_f3"] {
        let out = rtp(&["validate", &format!("groups/{g}.json")]);
        assert_eq!(out.status.code(), Some(0), "{g}");
    }
}

#[test]
fn checks_between_levels() {
    let coh = rtp(&["check", "coherence", "families/counterexample.json", "--S", "0", "--Sprime", "0,1"]);
    assert_eq!(coh.status.code(), Some(1));
    let r = report(&coh);
    assert!(r.failures().iter().any(|d| d.location.ends_with("rank_one_pprime")));

    let iso = rtp(&["check", "isometry", "families/compatible.json", "--S", "0", "--Sprime", "0,1"]);
    assert_eq!(iso.status.code(), Some(0), "{}", String::from_utf8_lossy(&iso.stderr));

    let not_nested = rtp(&["check", "isometry", "families/corner.json", "--S", "0,1", "--Sprime", "1"]);
    assert_eq!(not_nested.status.code(), Some(1));
}

#[test]
fn level_build_describes_the_level() {
    let out = rtp(&["level", "build", "families/corner.json", "--S", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.info_usize("cdim"), Some(4));
}

#[test]
fn suites_write_reports_and_merge() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = rtp(&["--seed", "3", "--out", a.to_str().unwrap(), "suite", "compacts", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = rtp(&["--seed", "3", "--jobs", "4", "--out", b.to_str().unwrap(), "suite", "compacts", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let merged = rtp(&["report", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(merged.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&merged.stdout).unwrap();
    assert_eq!(summary["checks"][0]["reports"], 2);

    assert_eq!(rtp(&["report", "missing.json"]).status.code(), Some(2));
}

#[test]
fn timing_is_opt_in() {
    let plain = report(&rtp(&["suite", "coherence", "--count", "2"]));
    assert_eq!(plain.ms, None);
    let timed = report(&rtp(&["--timing", "suite", "coherence", "--count", "2"]));
    assert!(timed.ms.is_some());
}

#[test]
fn parabolic_demo() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("demo.json");
    let out = rtp(&["parabolic", "demo", "--q", "2", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: VerificationReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.info_usize("q2/cdim"), Some(3));
    assert_eq!(r.info_usize("global/dim"), Some(3));

    let bad = rtp(&["parabolic", "demo", "--q", "2", "--rho", "char9"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn fixtures_write_regenerates_everything() {
    let dir = tempfile::tempdir().unwrap();
    let out = rtp(&["fixtures", "write", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for (rel, _) in generate() {
        assert!(Path::new(&dir.path().join(rel)).is_file());
    }
}

#[test]
fn report_edge_cases() {
    let empty = rtp(&["report"]);
    assert_eq!(empty.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&empty.stdout).unwrap();
    assert_eq!(summary["checks"], serde_json::json!([]));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = rtp(&["--out", path.to_str().unwrap(), "suite", "coherence", "--count", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap().replace("rtp/1", "rtp/0");
    std::fs::write(&path, text).unwrap();
    assert_eq!(rtp(&["report", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn parabolic_suite_over_both_fields() {
    let out = rtp(&["suite", "parabolic", "--q", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.info_usize("global/dim"), Some(12));
    assert_eq!(out.stdout, rtp(&["suite", "parabolic", "--q", "2,3"]).stdout);
}
