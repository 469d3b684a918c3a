use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_monodromy")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

#[test]
fn poincare_of_e14() {
    assert_eq!(run(&["poincare", "E14"]), (0, "24/3·8·12\n".into(), String::new()));
}

#[test]
fn show_json_round_trips() {
    let (code, out, _) = run(&["show", "F8", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "boundary");
    assert_eq!(v["ambient"], "E14");
    assert_eq!(v["psi_f"], serde_json::json!({"num": {"3": 1, "4": 1}, "den": {}}));
}

#[test]
fn list_by_class() {
    let (code, out, _) = run(&["list", "--class", "simple"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = out.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, ["B3", "C3", "F4"]);
    let (_, json, _) = run(&["list", "--format", "json"]);
    let doc = monodromy::catalog::CatalogDocument::parse(&json).unwrap();
    assert_eq!((doc.ambient.len(), doc.boundary.len(), doc.mckay.len()), (11, 18, 4));
}

#[test]
fn fold_a3() {
    let (code, out, _) = run(&["fold", "--input", &data("a3.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("frame: 4/2\n"), "{out}");
    assert!(out.contains("phi_X = phi_1 * phi_fbar: true"));
}

#[test]
fn fold_rejects_non_isometry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"gram": [[-2, 1, 0], [1, -2, 1], [0, 1, -2]], "involution": [[1, 2]]}"#).unwrap();
    let (code, out, err) = run(&["fold", "--input", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn charpoly_of_e8() {
    let (code, out, _) = run(&["charpoly", "E8"]);
    assert_eq!(code, 0);
    assert!(out.contains("frame: 2·3·5·30/1·6·10·15\n"), "{out}");
}

#[test]
fn mckay_slodowy_pair() {
    let (code, out, _) = run(&["mckay", "--group", "BO", "--subgroup", "BT", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["affine"], "affineF4");
    assert_eq!(v["prime"], 1201);
    let (_, text, _) = run(&["mckay", "--group", "C4"]);
    assert!(text.contains("affine: affineA(3)\n"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = run(&["mckay", "--group", "BX"]);
    assert_eq!(code, 2);
    assert!(err.contains("BX"), "{err}");
    assert_eq!(run(&["list", "--bogus"]).0, 2);
    assert_eq!(run(&["verify"]).0, 2);
    assert_eq!(run(&["mckay", "--group", "C4", "--prime", "1200"]).0, 1);
}

#[test]
fn verify_selection() {
    let (code, out, _) = run(&["verify", "--only", "folded-t.F8"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("1 passed, 0 failed, 0 skipped\n"), "{out}");
    let (code, out, _) = run(&["verify", "--only", "nothing"]);
    assert_eq!((code, out.as_str()), (0, "no checks selected\n"));
}

#[test]
fn verify_all_passes() {
    let (code, out, _) = run(&["verify", "--all", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["runtime_ms"], 0);
    }
    assert!(!out.contains('\u{2014}'));
}
