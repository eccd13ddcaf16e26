use std::path::Path;
use std::process::{Command, Output};

fn charring(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charring"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_match_table_rows() {
    let dir = tempfile::tempdir().unwrap();
    for (group, p, line) in [
        ("A5", "5", "ℓ=3 S=3 d=5,2,1 ℓ(1)=3 ext¹=1"),
        ("A6", "3", "ℓ=3 S=3 d=7,2,1 ℓ(1)=3 ext¹=1"),
        ("PSL(2,7)", "7", "ℓ=3 S=3 d=6,2,1 ℓ(1)=3 ext¹=1"),
    ] {
        let o = charring(&["invariants", group, "--p", p], dir.path());
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).lines().nth(1).unwrap().trim(), line);
    }
}

#[test]
fn table_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = charring(&["table", "S4", "--out", "s4.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let t = charring::chartab::CharacterTable::from_json(&std::fs::read_to_string(dir.path().join("s4.json")).unwrap())
        .unwrap();
    assert_eq!(t.num_classes(), 5);

    let o = charring(&["table", "trivial"], dir.path());
    let t = charring::chartab::CharacterTable::from_json(&stdout(&o)).unwrap();
    assert_eq!(t.num_classes(), 1);

    std::fs::write(dir.path().join("D10.txt"), "5\n(1,2,3,4,5)\n(2,5)(3,4)\n").unwrap();
    let o = charring(&["table", "--generators", "D10.txt", "--format", "text"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4 classes"));

    // invariants from the ingested table
    let o = charring(&["invariants", "--table", "s4.json", "--p", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ℓ=3 S=4 d=5,3,1 ℓ(1)=3 ext¹=2"));
}

#[test]
fn cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let first = charring(&["invariants", "A5", "--cache", "cache", "--format", "json"], dir.path());
    let files: Vec<_> = std::fs::read_dir(dir.path().join("cache")).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = charring(&["invariants", "A5", "--cache", "cache", "--format", "json"], dir.path());
    assert_eq!(first.stdout, second.stdout);
    let reports: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 3);
}

#[test]
fn verify_reports_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = charring(&["verify", "S4", "--p", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains("FAIL"));
    assert!(out.contains("ℓ(G,1) = 3, ℓ(N_G(P),1) = 3"));

    let o = charring(&["verify", "A5", "--p", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("[pass] block isomorphism").count(), 4);

    let o = charring(&["verify", "trivial"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn ext_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let o = charring(&["invariants", "C2", "--p", "2", "--ext", "5"], dir.path());
    assert!(stdout(&o).contains("ext=1,1,1,1,1"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(charring(&["invariants", "nope"], dir.path()).status.code(), Some(2));
    assert_eq!(charring(&["invariants", "S4", "--p", "4"], dir.path()).status.code(), Some(2));
    assert_eq!(charring(&["invariants", "--table", "missing.json"], dir.path()).status.code(), Some(2));
    assert_eq!(charring(&["invariants", "S11"], dir.path()).status.code(), Some(3));
    // residue field beyond the extension-degree limit
    let o = charring(&["invariants", "PSL(2,23)", "--p", "2,23"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("[skip]"));
    std::fs::write(dir.path().join("bad.json"), "{\"name\": \"x\"}").unwrap();
    assert_eq!(charring(&["invariants", "--table", "bad.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn expect_detects_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("golden.txt"), "something else\n").unwrap();
    let o = charring(&["invariants", "S3", "--expect", "golden.txt"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn manifest_replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let o = charring(
        &["verify", "S4", "--seed", "11", "--out", "first.txt", "--save-manifest", "run.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "verify");
    assert_eq!(manifest["input"]["builtin"], "S4");
    assert_eq!(manifest["seed"], 11);

    let first = std::fs::read(dir.path().join("first.txt")).unwrap();
    let o = charring(&["replay", "run.json", "--expect", "first.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(dir.path().join("first.txt")).unwrap(), first);

    std::fs::write(dir.path().join("broken.json"), "{\"command\": \"dance\"}").unwrap();
    assert_eq!(charring(&["replay", "broken.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn reproduce_with_shipped_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = charring(&["reproduce", "--suite", "psl", "--format", "json"], dir.path());
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(rows.iter().all(|r| r["status"] != "fail"));
    assert!(rows
        .iter()
        .filter(|r| r["group"] == "PSL(2,13)")
        .all(|r| r["status"] == "pass"));

    // a table file stands in for a group without generators
    std::fs::create_dir(dir.path().join("tables")).unwrap();
    let o = charring(&["table", "W(H3)", "--out", "tables/W(H3).json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let o = charring(&["reproduce", "--suite", "weyl", "--tables", "tables"], dir.path());
    let out = stdout(&o);
    assert!(out.contains("pass W(H3) p=5: ℓ=3 S=3 d=10,4,2 ℓ(1)=3 ext¹=1"));
    assert!(out.contains("skip W(E8)"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn jobs_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let one = charring(&["--jobs", "1", "invariants", "S5", "--format", "json"], dir.path());
    let many = charring(&["--jobs", "4", "invariants", "S5", "--format", "json"], dir.path());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
