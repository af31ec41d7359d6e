use std::path::PathBuf;
use std::process::{Command, Output};

fn mge(args: &[&str], tier: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mge")).args(args).env("MGE_TIER", tier).env_remove("MGE_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn cert(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/certificates").join(name).display().to_string()
}

#[test]
fn bounds() {
    let o = mge(&["bounds", "--pbound", "2", "3"], "1");
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "32");
    assert_eq!(stdout(&mge(&["bounds", "--nbound", "12"], "1")).trim(), "332640");
    assert_eq!(stdout(&mge(&["bounds", "--collection", "12"], "1")).trim(), "24");
    assert_eq!(mge(&["bounds"], "1").status.code(), Some(2));
}

#[test]
fn construct_iso_embed() {
    let o = mge(&["construct", "named(H2)"], "1");
    assert!(o.status.success());
    assert!(stdout(&o).contains("order: 32"));
    assert!(stdout(&mge(&["construct", "named(BIG15_SOL)"], "1")).contains("order: 8648640"));

    assert!(mge(&["iso", "C(6)", "C(2) x C(3)"], "1").status.success());
    assert_eq!(mge(&["iso", "C(4)", "EA(2,2)"], "1").status.code(), Some(1));

    let o = mge(&["embed", "Q(2)", "named(C2xH1)"], "1");
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"images\""));
    assert_eq!(mge(&["embed", "Q(2)", "D(8)"], "1").status.code(), Some(1));
    assert!(mge(&["embed", "D(7)", "named(BIG15_SOL)", "--support", "4"], "1").status.success());
    assert_eq!(mge(&["construct", "C(0"], "1").status.code(), Some(2));
}

#[test]
fn enumerate_and_minimal() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat.json");
    let o = mge(&["enumerate", "12", "--out", out.to_str().unwrap()], "1");
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("order 12: 5 groups"));
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"order\": 12"));
    assert_eq!(mge(&["enumerate", "72"], "1").status.code(), Some(2));
    assert!(mge(&["enumerate", "72", "--tier", "2"], "1").status.success());

    let o = mge(&["minimal", "--order", "9", "--max", "27"], "1");
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("minimal order 27"));
    assert_eq!(mge(&["minimal", "--order", "8", "--max", "16"], "1").status.code(), Some(1));
    assert_eq!(mge(&["minimal", "--order", "8", "--upto", "8", "--max", "16"], "1").status.code(), Some(2));
}

#[test]
fn verify_certificates() {
    let o = mge(&["verify", &cert("s3xs4.json")], "1");
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"ambient":"C(8)[x]","anchor":"","claims":[{"target":"C(8)","generators":["x^2"],"source":"derived"}]}"#).unwrap();
    let o = mge(&["verify", bad.to_str().unwrap()], "1");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("order mismatch 4 ≠ 8"));

    std::fs::write(&bad, "{").unwrap();
    assert_eq!(mge(&["verify", bad.to_str().unwrap()], "1").status.code(), Some(2));
}

#[test]
fn reproduce_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let o = mge(&["reproduce", "table1", "--json", json.to_str().unwrap()], "1");
    assert!(o.status.success());
    let first = std::fs::read(&json).unwrap();
    assert!(mge(&["reproduce", "table1", "--json", json.to_str().unwrap()], "1").status.success());
    assert_eq!(first, std::fs::read(&json).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["status"], "pass");
    assert_eq!(report["items"].as_array().unwrap().len(), 15);

    let o = mge(&["reproduce", "lemma-p3"], "2");
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("SKIP lemma-p3"));

    assert_eq!(mge(&["reproduce", "nope"], "1").status.code(), Some(2));
    assert_eq!(mge(&["reproduce", "table4"], "7").status.code(), Some(2));
}
