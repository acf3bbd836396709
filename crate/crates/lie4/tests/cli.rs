use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn lie4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lie4")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("lie4-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn fixtures_are_canonical() {
    for f in ["h4.json", "g4_7.json", "g4_10.json", "dprime4_1.json"] {
        let text = std::fs::read_to_string(data(f)).unwrap();
        let g = lie4::io::parse_document(&text).unwrap();
        assert_eq!(lie4::io::emit_document(&g), text, "{f}");
    }
}

#[test]
fn identify_g410_is_affc() {
    let o = lie4(&["identify", "--input", data("g4_10.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("aff(C)"));
    let o = lie4(&["identify", "--json", "--input", data("g4_10.json").to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["identification"]["family"], "AffC");
    assert_eq!(v["identification"]["verified"], true);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn dprime41_has_no_paracomplex_structure() {
    let o = lie4(&["search", "--paracomplex", "--input", data("dprime4_1.json").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for s in v["searches"].as_array().unwrap() {
        assert_eq!(s["outcome"], "decided-empty");
        assert_eq!(s["certificate"]["kind"], "ForcedVector");
    }
}

#[test]
fn search_exit_codes() {
    let h4 = data("h4.json");
    let o = lie4(&["search", "--paracomplex", "--type", "affr2", "--input", h4.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("⋈"));
    let o = lie4(&["search", "--paracomplex", "--budget", "0", "--input", data("dprime4_1.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn jacobi_defect_is_reported() {
    let text = std::fs::read_to_string(data("g4_7.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let b = doc["brackets"].as_array_mut().unwrap().iter_mut().find(|b| b["i"] == 0 && b["j"] == 3).unwrap();
    b["coeffs"]["3"] = "1".into();
    let p = scratch("tampered.json", &doc.to_string());
    let o = lie4(&["identify", "--input", &p]);
    assert_eq!(o.status.code(), Some(65));
    assert!(stderr(&o).contains("(0,1,3)"), "{}", stderr(&o));
}

#[test]
fn non_canonical_rational_gets_hint() {
    let p = scratch(
        "half.json",
        r#"{"format_version":1,"dim":2,"basis":["x","y"],"brackets":[{"i":0,"j":1,"coeffs":{"1":"2/4"}}]}"#,
    );
    let o = lie4(&["identify", "--input", &p]);
    assert_eq!(o.status.code(), Some(65));
    assert!(stderr(&o).contains("\"1/2\""), "{}", stderr(&o));
}

#[test]
fn semisimple_input_exits_2() {
    let p = scratch(
        "sl2.json",
        r#"{"format_version":1,"dim":3,"basis":["h","e","f"],"brackets":[{"i":0,"j":1,"coeffs":{"1":"2"}},{"i":0,"j":2,"coeffs":{"2":"-2"}},{"i":1,"j":2,"coeffs":{"0":"1"}}]}"#,
    );
    let o = lie4(&["identify", "--input", &p]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn usage_errors() {
    assert_eq!(lie4(&["bogus"]).status.code(), Some(64));
    assert_eq!(lie4(&["verify", "--table", "nope"]).status.code(), Some(64));
    assert_eq!(lie4(&["search", "--input", "x"]).status.code(), Some(64));
    assert_eq!(lie4(&["--help"]).status.code(), Some(0));
    assert_eq!(lie4(&["--version"]).status.code(), Some(0));
}

#[test]
fn verify_and_recheck() {
    let o = lie4(&["verify", "--table", "pc", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let p = scratch("pc.json", &stdout(&o));
    let doc = lie4::io::ReportDocument::from_json(&stdout(&o)).unwrap();
    assert!(doc.consistent());
    assert_eq!(doc.totals().fail, 0);
    assert_eq!(doc.totals().undecided, 0);
    let r = lie4(&["verify", "--recheck", &p]);
    assert_eq!(r.status.code(), Some(0), "{}", stdout(&r));

    // a doctored record does not survive the recheck
    let forged = stdout(&o).replacen("\"status\": \"pass\"", "\"status\": \"fail\"", 1);
    let p = scratch("forged.json", &forged);
    assert_eq!(lie4(&["verify", "--recheck", &p]).status.code(), Some(1));
}

#[test]
fn seed_is_recorded() {
    let o = lie4(&["verify", "--table", "roundtrip", "--seed", "7", "--json"]);
    let doc = lie4::io::ReportDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.seed, Some(7));
}

#[test]
fn derivations_and_matrices() {
    let o = lie4(&["derivations", "--input", data("h4.json").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let m: lie4::io::MatricesDocument = serde_json::from_slice(&o.stdout).unwrap();
    let back = lie4::io::parse_matrices(&serde_json::to_string(&m).unwrap()).unwrap();
    let g = lie4::io::parse_document(&std::fs::read_to_string(data("h4.json")).unwrap()).unwrap();
    assert!(back.iter().all(|d| g.is_derivation(d)));

    let p = scratch("aff.json", r#"{"format_version":1,"matrices":[[["1","0"],["0","0"]],[["0","1"],["0","0"]]]}"#);
    let o = lie4(&["from-matrices", "--input", &p, "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["identification"]["family"], "AffR");
    assert_eq!(v["document"]["dim"], 2);
}

#[test]
fn catalog_listing() {
    let o = lie4(&["catalog", "--list", "--family", "AffC"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("aff(C)"));
    assert!(stdout(&o).contains("g4,10"));
    let o = lie4(&["catalog", "--list", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 24);
    assert_eq!(lie4(&["catalog", "--list", "--family", "nope"]).status.code(), Some(64));
}
