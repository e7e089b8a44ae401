use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn chernlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chernlab")).args(args).env_remove("CHERNLAB_MAXDEG").output().unwrap()
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chernlab-cli-{}-{tag}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

const Z_RING: &str = "field Fp 32003
ring R = poly(x,y,z) / (x*z, y*z, z^2)
ideal J in R = (x, y)
coeffs R J
koszul R J
";

#[test]
fn run_writes_json_and_tables() {
    let dir = scratch("run");
    let script = dir.join("z.cl");
    fs::write(&script, Z_RING).unwrap();
    let json = dir.join("out.json");
    let tsv = dir.join("tables");
    let out = chernlab(&["run", script.to_str().unwrap(), "--json", json.to_str().unwrap(), "--tsv", tsv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let bundle: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(bundle["seed"], "42");
    assert_eq!(bundle["field"], "Fp 32003");
    let results = bundle["instances"][0]["results"].as_array().unwrap();
    let coeffs = results.iter().find(|r| r["kind"] == "coeffs").unwrap();
    assert_eq!(coeffs["values"]["e1"], "0");
    assert_eq!(coeffs["values"]["e2"], "1");
    let tables: Vec<_> = fs::read_dir(&tsv).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(tables.len(), 1);
    assert!(fs::read_to_string(tsv.join(&tables[0])).unwrap().starts_with("n\t"));

    // stdout carries the same bundle when no file is given
    let again = chernlab(&["run", script.to_str().unwrap()]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), fs::read_to_string(&json).unwrap());
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    let bad = dir.join("bad.cl");
    fs::write(&bad, "field Fp 32003\nring R = poly(x,y)\nideal I in R = (x + , y)\n").unwrap();
    let out = chernlab(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.cl:3:"), "{err}");

    let missing = dir.join("missing.cl");
    assert_eq!(chernlab(&["run", missing.to_str().unwrap()]).status.code(), Some(3));

    let pre = dir.join("pre.cl");
    fs::write(&pre, "field Fp 32003\nring R = poly(x,y)\nideal I in R = (x)\ncoeffs R I\n").unwrap();
    assert_eq!(chernlab(&["run", pre.to_str().unwrap()]).status.code(), Some(3));

    let z = dir.join("z.cl");
    fs::write(&z, Z_RING).unwrap();
    let guarded = Command::new(env!("CARGO_BIN_EXE_chernlab")).args(["run", z.to_str().unwrap()]).env("CHERNLAB_MAXDEG", "2").output().unwrap();
    assert_eq!(guarded.status.code(), Some(4));
    assert_eq!(chernlab(&["run", z.to_str().unwrap(), "--maxdeg", "2"]).status.code(), Some(4));

    let fraction = dir.join("qq.cl");
    fs::write(&fraction, "field QQ\nring P = poly(x,y)\nideal I in P = (x - 1/2*y, y^2)\ncoeffs P I\n").unwrap();
    assert_eq!(chernlab(&["run", fraction.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(chernlab(&["run", fraction.to_str().unwrap(), "--field", "fp32003"]).status.code(), Some(2));
}

#[test]
fn demos() {
    let out = chernlab(&["demo", "idealization-3"]);
    assert_eq!(out.status.code(), Some(0));
    let bundle: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = bundle["instances"][0]["results"].as_array().unwrap();
    let published = results.iter().find(|r| r["kind"] == "expectation" && r["provenance"] == "published").unwrap();
    assert_eq!(published["values"]["computed"], "-3");
    assert_eq!(published["verdict"], "holds");

    let unknown = chernlab(&["demo", "no-such-ring"]);
    assert_eq!(unknown.status.code(), Some(3));
    assert!(String::from_utf8(unknown.stderr).unwrap().contains("z-ring"));

    assert_eq!(chernlab(&["demo", "rees-cubic"]).status.code(), Some(3));
}
