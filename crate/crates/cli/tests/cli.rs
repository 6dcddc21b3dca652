//! End-to-end runs of the `coiso` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn coiso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coiso")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coiso-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// Writes `coiso <args>` stdout to `dir/file` and returns the path.
fn save(dir: &Path, file: &str, args: &[&str]) -> String {
    let o = coiso(args);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let path = dir.join(file);
    fs::write(&path, o.stdout).unwrap();
    path.to_string_lossy().into_owned()
}

const STD_PLANE: &str = r#"{"dim": 2, "form": [["0", "1"], ["-1", "0"]]}"#;

fn full_relation_doc() -> String {
    format!(
        r#"{{"kind": "presymplectic", "target": {STD_PLANE}, "source": {STD_PLANE},
            "relation": {{"basis": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}}}}"#
    )
}

#[test]
fn validate_reports_isotropy() {
    let dir = scratch("validate");
    let i1 = save(&dir, "i1.json", &["canonical", "I1"]);
    let o = coiso(&["validate", &i1]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("isotropic: true"));
    assert!(stdout(&o).contains("graph dim: 2"));

    let full = dir.join("full.json");
    fs::write(&full, full_relation_doc()).unwrap();
    let full = full.to_string_lossy();
    let o = coiso(&["validate", &full]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("isotropic: false"));
    assert_eq!(code(&coiso(&["validate", "--require", &full])), 2);
    assert_eq!(code(&coiso(&["decompose", &full])), 2);
    assert_eq!(code(&coiso(&["invariants", &full])), 2);
}

#[test]
fn malformed_form_names_the_field() {
    let dir = scratch("malformed");
    let bad = dir.join("bad.json");
    fs::write(
        &bad,
        full_relation_doc().replacen(r#"["-1", "0"]"#, r#"["1", "0"]"#, 1),
    )
    .unwrap();
    let o = coiso(&["validate", &bad.to_string_lossy()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("target.form"));
    assert_eq!(code(&coiso(&["validate", "/nonexistent/doc.json"])), 1);
    assert_eq!(code(&coiso(&["canonical", "I14"])), 1);
    assert_eq!(code(&coiso(&["frobnicate"])), 1);
}

#[test]
fn invariants_and_multiplicities() {
    let dir = scratch("invariants");
    let i1 = save(&dir, "i1.json", &["canonical", "I1"]);
    let o = coiso(&["invariants", "--json", &i1]);
    assert_eq!(stdout(&o).trim(), "[1,1,0,0,0,0,0,0,0,0,0,1,0]");
    assert!(stdout(&coiso(&["multiplicities", &i1])).lines().any(|l| l.starts_with("I1:  1")));

    let i6 = save(&dir, "i6.json", &["canonical", "I6"]);
    assert_eq!(
        stdout(&coiso(&["multiplicities", "--json", &i6])).trim(),
        "[0,0,0,0,0,1,0,0,0,0,0,0,0]"
    );

    let mixed = save(&dir, "mixed.json", &["canonical", "I2:1,I9:2"]);
    let text = stdout(&coiso(&["multiplicities", &mixed]));
    assert!(text.lines().any(|l| l.starts_with("I2:  1")));
    assert!(text.lines().any(|l| l.starts_with("I9:  2")));

    let co = save(&dir, "co.json", &["random", "I12:1,I5:1", "--seed", "4", "--kind", "poisson"]);
    assert_eq!(
        stdout(&coiso(&["multiplicities", "--json", &co])).trim(),
        "[0,0,0,0,1,0,0,0,0,0,0,1,0]"
    );
}

#[test]
fn decompose_then_verify() {
    let dir = scratch("verify");
    for (i, (n, kind)) in [
        ("I1:1,I6:1,I13:2", "presymplectic"),
        ("I2:1,I3:1,I8:1,I9:1,I7:1", "presymplectic"),
        ("I4:1,I5:1,I10:1,I11:1,I12:1", "poisson"),
        ("1,1,1,1,1,1,1,1,1,1,1,1,1", "poisson"),
    ]
    .iter()
    .enumerate()
    {
        let seed = (i + 1).to_string();
        let doc = save(&dir, &format!("doc{i}.json"), &["random", n, "--seed", &seed, "--kind", kind]);
        let cert = dir.join(format!("doc{i}.cert.json"));
        let cert = cert.to_string_lossy();
        assert_eq!(code(&coiso(&["decompose", &doc, "--out", &cert])), 0);
        let o = coiso(&["verify", &doc, &cert]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("verified: true"));
    }

    // A certificate for one relation does not verify another.
    let other = save(&dir, "other.json", &["random", "I1:1,I6:1,I13:2", "--seed", "99"]);
    let o = coiso(&["verify", &other, &dir.join("doc0.cert.json").to_string_lossy()]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("verified: false"));
}

#[test]
fn batch_decompose_writes_one_certificate_per_document() {
    let dir = scratch("batch");
    let a = save(&dir, "a.json", &["random", "I1:2", "--seed", "1"]);
    let b = save(&dir, "b.json", &["random", "I6:1,I9:1", "--seed", "2"]);
    let out = dir.join("certs");
    let o = coiso(&["decompose", "--jobs", "2", "--out", &out.to_string_lossy(), &a, &b]);
    assert_eq!(code(&o), 0);
    for (doc, stem) in [(&a, "a"), (&b, "b")] {
        let cert = out.join(format!("{stem}.cert.json"));
        assert_eq!(code(&coiso(&["verify", doc, &cert.to_string_lossy()])), 0);
    }
}

#[test]
fn dualize_twice_is_isomorphic() {
    let dir = scratch("dualize");
    let doc = save(&dir, "doc.json", &["random", "I3:1,I6:1,I12:1,I11:1", "--seed", "5"]);
    let d = save(&dir, "d.json", &["dualize", &doc]);
    assert!(stdout(&coiso(&["validate", &d])).contains("coisotropic: true"));
    let dd = save(&dir, "dd.json", &["dualize", &d]);
    let o = coiso(&["isomorphic", &doc, &dd]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "isomorphic: true");

    let other = save(&dir, "other.json", &["canonical", "I7"]);
    assert_eq!(stdout(&coiso(&["isomorphic", &doc, &other])).trim(), "isomorphic: false");
}

#[test]
fn canonical_i7_is_identity_on_a_line() {
    let o = coiso(&["canonical", "0,0,0,0,0,0,1,0,0,0,0,0,0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "presymplectic");
    for side in ["target", "source"] {
        assert_eq!(v[side]["dim"], 1);
        assert_eq!(v[side]["form"], serde_json::json!([["0"]]));
    }
    assert_eq!(v["relation"]["basis"], serde_json::json!([["1", "1"]]));
}

#[test]
fn random_is_reproducible_and_records_its_seed() {
    let a = coiso(&["random", "I1:1,I13:1", "--seed", "42"]);
    let b = coiso(&["random", "I1:1,I13:1", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["generator"]["seed"], 42);
    assert_eq!(v["generator"]["multiplicities"], serde_json::json!([1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
}
