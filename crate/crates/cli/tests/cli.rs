use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn avgorder(args: &[&str], cap: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_avgorder"));
    cmd.args(args).env_remove("AVGORDER_CAP");
    if let Some(cap) = cap {
        cmd.env("AVGORDER_CAP", cap);
    }
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn corpus_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const SMALL: &str = "\
# two small groups
GROUP a5 DEG 5 NAME A5 ORDER 60
GEN 2 3 4 5 1
GEN 2 3 1 4 5
END
GROUP c6 DEG 6 ORDER 6
GEN 2 3 4 5 6 1
END
";

#[test]
fn construct_emit_round_trips_through_spectrum() {
    let out = avgorder(&["construct", "--family", "semidirect:5,4,2", "--emit", "--id", "f20"], None);
    assert_eq!(out.status.code(), Some(0));
    let record = stdout(&out);
    assert!(record.starts_with("GROUP f20 DEG 9 NAME semidirect:5,4,2 ORDER 20"), "{record}");
    let file = corpus_file(&record);
    let path = file.path().to_str().unwrap();
    let out = avgorder(&["spectrum", "--corpus", path, "--id", "f20"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("spectrum 1:1,2:5,4:10,5:4"), "{text}");
    assert!(text.contains("psi 71"), "{text}");
    assert!(text.contains("avg 71/20"), "{text}");
    assert!(text.contains("solvable true"), "{text}");
}

#[test]
fn construct_summary() {
    let out = avgorder(&["construct", "--family", "cyclic:6"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("avg 7/2"));
}

#[test]
fn search_reports_matches() {
    let file = corpus_file(SMALL);
    let path = file.path().to_str().unwrap();
    let out = avgorder(&["search", "--corpus", path, "--target", "211/60"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("match a5 order 60 avg 211/60 solvable false"), "{text}");
    assert!(text.contains("filtered-prefilter 1"), "{text}");
    let out = avgorder(&["search", "--corpus", path, "--target", "7/2", "--no-prefilter", "--jobs", "2"], None);
    assert!(stdout(&out).contains("match c6 order 6 avg 7/2 solvable true"));
}

#[test]
fn bad_input_exits_2() {
    let file = corpus_file(SMALL);
    let path = file.path().to_str().unwrap();
    let cases: &[&[&str]] = &[
        &["search", "--corpus", path, "--target", "1/0"],
        &["search", "--corpus", path, "--target", "abc"],
        &["search", "--corpus", "/nonexistent/file", "--target", "1"],
        &["search", "--corpus", path, "--target", "1", "--jobs", "0"],
        &["verify", "--corpus", path, "--suite", "nonsense"],
        &["spectrum", "--corpus", path, "--id", "missing"],
        &["construct", "--family", "cyclic:0"],
        &["construct", "--family", "semidirect:7,2,2"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = avgorder(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let broken = corpus_file("GROUP x DEG 3\nGEN 1 1 2\nEND\n");
    let out = avgorder(&["search", "--corpus", broken.path().to_str().unwrap(), "--target", "1"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let wrong_order = corpus_file("GROUP x DEG 3 ORDER 5\nGEN 2 3 1\nEND\n");
    let out = avgorder(&["search", "--corpus", wrong_order.path().to_str().unwrap(), "--target", "1"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let out = avgorder(&["construct", "--family", "symmetric:5"], Some("100"));
    assert_eq!(out.status.code(), Some(3));
    let file = corpus_file(SMALL);
    let path = file.path().to_str().unwrap();
    let out = avgorder(&["search", "--corpus", path, "--target", "7/2", "--no-prefilter"], Some("10"));
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("skip a5"), "{text}");
    assert!(text.contains("match c6"), "{text}");
    let out = avgorder(&["construct", "--family", "cyclic:6"], Some("zero"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_exit_cleanly() {
    let file = corpus_file(SMALL);
    let path = file.path().to_str().unwrap();
    for suite in ["bounds", "lemmas", "spectra"] {
        let out = avgorder(&["verify", "--corpus", path, "--suite", suite], None);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        let text = stdout(&out);
        assert!(text.lines().last().unwrap().contains("violated 0"), "{text}");
    }
    let out = avgorder(&["verify", "--suite", "proof"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("case2.2.threshold | largest n | 960 |"));
}
