use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qc2d::alist::from_alist;
use qc2d::construct::ShiftPlan;
use qc2d::graph::BlockTensor;

fn qc2d(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qc2d")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn prime3(dir: &Path) {
    let o = qc2d(dir, &["construct", "--family", "prime", "--p", "3", "--out", "p3.txt"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn construct_prime_writes_every_block() {
    let dir = tempfile::tempdir().unwrap();
    prime3(dir.path());
    let text = fs::read_to_string(dir.path().join("p3.txt")).unwrap();
    let plan = ShiftPlan::from_text(&text).unwrap();
    assert_eq!(plan.dims().blocks(), 81);
    assert_eq!(text.lines().filter(|l| l.split_whitespace().count() == 5).count(), 81);
    assert!(dir.path().join("p3.txt.manifest").exists());
}

#[test]
fn construct_behrend_and_composite() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = qc2d(d, &["construct", "--family", "behrend", "--p", "7", "--c", "2", "--b", "2", "--h", "21", "--out", "b.txt"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = qc2d(d, &["analyze", "b.txt"]);
    assert!(o.status.success(), "{}", stdout(&o));

    let o = qc2d(d, &["construct", "--family", "composite", "--p", "4", "--c", "2", "--b", "2", "--h", "8", "--out", "c.txt"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = qc2d(d, &["construct", "--family", "composite", "--p", "4", "--c", "5", "--b", "2", "--h", "8", "--out", "bad.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(c-1)(h/p-1) < p"), "{}", stderr(&o));
}

#[test]
fn analyze_reports_ranks() {
    let dir = tempfile::tempdir().unwrap();
    prime3(dir.path());
    let o = qc2d(dir.path(), &["analyze", "p3.txt"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("[9,17,25]"), "{out}");
    assert!(dir.path().join("p3.txt.analyze.manifest").exists());
}

#[test]
fn corrupted_plan_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    prime3(dir.path());
    let path = dir.path().join("p3.txt");
    let text = fs::read_to_string(&path).unwrap();
    let broken: String = text.lines().take(20).map(|l| format!("{l}\n")).collect();
    fs::write(&path, broken).unwrap();
    let o = qc2d(dir.path(), &["analyze", "p3.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn erasure_exhaustive_and_oversized_burst() {
    let dir = tempfile::tempdir().unwrap();
    prime3(dir.path());
    let o = qc2d(dir.path(), &["erasure", "p3.txt", "--s", "3", "--t", "3", "--exhaustive"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("all 81 anchors recovered"), "{}", stdout(&o));

    let o = qc2d(dir.path(), &["erasure", "p3.txt", "--s", "9", "--t", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FALSE"), "{}", stdout(&o));
}

#[test]
fn simulation_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    prime3(d);
    let run = |csv: &str| {
        let o = qc2d(d, &["erasure", "p3.txt", "--s", "4", "--t", "4", "--simulate", "300", "--epsilon", "0.1,0.2", "--seed", "7", "--csv", csv]);
        assert!(o.status.success(), "{}", stderr(&o));
        fs::read(d.join(csv)).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("family,p,model,param,trials,failures,rate,seed"));
}

#[test]
fn ea_families() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    prime3(d);
    let o = qc2d(d, &["ea", "p3.txt", "--family", "one", "--w1", "0", "--w2", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[[81,64;1]]_2 PASS"), "{}", stdout(&o));

    let o = qc2d(d, &["ea", "p3.txt", "--family", "two", "--w1", "0,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[[81,64;17]]_2 PASS"), "{}", stdout(&o));

    let o = qc2d(d, &["ea", "p3.txt", "--family", "one", "--w1", "0,1", "--w2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not disjoint"), "{}", stderr(&o));
}

#[test]
fn export_alist_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    prime3(d);
    let o = qc2d(d, &["export", "p3.txt", "--format", "alist", "--out", "h.alist"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(d.join("h.alist")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("81 27"));
    assert_eq!(lines.next(), Some("3 9"));
    let plan = ShiftPlan::from_text(&fs::read_to_string(d.join("p3.txt")).unwrap()).unwrap();
    assert_eq!(from_alist(&text).unwrap(), BlockTensor::new(plan).unfold());

    let o = qc2d(d, &["export", "p3.txt", "--format", "csv", "--out", "h.csv"]);
    assert!(o.status.success());
    let csv = fs::read_to_string(d.join("h.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| !l.starts_with("row")).count(), 27 * 9);
}

#[test]
fn manifest_override() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    prime3(d);
    let o = qc2d(d, &["--manifest", "run.txt", "analyze", "p3.txt"]);
    assert!(o.status.success());
    let m = fs::read_to_string(d.join("run.txt")).unwrap();
    assert!(m.contains("subcommand analyze"), "{m}");
    assert!(m.lines().any(|l| l == "status PASS"), "{m}");
}
