use std::process::Command;

use serde_json::Value;

fn hgm(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_hgm")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

#[test]
fn hypersum_special_value() {
    let (code, j) = hgm(&["hypersum", "--gamma", "-3,1,1,1", "--delta", "0,0,0,0", "--N", "1", "--q", "7", "--t", "1"]);
    assert_eq!(code, 0);
    assert_eq!(j["schema"], "hgm-report/1");
    assert!((j["outputs"]["value"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(j["outputs"]["params"]["alpha"], serde_json::json!(["1/3", "2/3"]));
}

#[test]
fn hypersum_extended_definition() {
    let (code, j) = hgm(&["hypersum", "--alpha", "1/3,2/3", "--beta", "1,1", "--q", "5", "--t", "2"]);
    assert_eq!(code, 0);
    assert_eq!(j["outputs"]["definition"], "triple");
}

#[test]
fn exit_codes() {
    assert_eq!(hgm(&["hypersum", "--gamma", "1,1", "--q", "7", "--t", "1"]).0, 2);
    assert_eq!(hgm(&["params", "--gamma", "a,b"]).0, 1);
    assert_eq!(hgm(&["dwork", "--d", "2", "--q", "9", "--u", "1"]).0, 2);
}

#[test]
fn params_triple_round_trip() {
    for (a, b) in [("1/3,2/3", "1,1"), ("1/4,3/4", "1/2,1"), ("1/5,2/5", "1/3,1")] {
        let (code, j) = hgm(&["triple", "--alpha", a, "--beta", b]);
        assert_eq!(code, 0);
        let t = &j["outputs"]["triple"];
        let ints = |v: &Value| v.as_array().unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let (code, back) = hgm(&["params", "--gamma", &ints(&t["gamma"]), "--delta", &ints(&t["delta"]), "--N", &t["N"].to_string()]);
        assert_eq!(code, 0);
        assert_eq!(back["outputs"]["params"]["alpha"].as_array().unwrap().len(), a.split(',').count());
        assert!(j["checks"][0]["pass"].as_bool().unwrap());
    }
}

#[test]
fn dwork_verify() {
    let (code, j) = hgm(&["dwork", "--d", "2", "--q", "7", "--u", "1", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(j["outputs"]["rounded"], 21);
    assert_eq!(j["checks"][0]["oracle"], 21);
}

#[test]
fn count_from_file() {
    let dir = std::env::temp_dir().join(format!("hgm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    std::fs::write(&path, r#"{"p": 7, "k": 1, "exponents": [[0, 2, 0, 2], [0, 0, 2, 2]], "coefficients": [1, 2, 3, 1]}"#).unwrap();
    let p = path.to_str().unwrap();
    for comp in ["I", "II", "torus"] {
        let (code, j) = hgm(&["count", "--input", p, "--compactification", comp, "--verify"]);
        assert_eq!(code, 0, "{comp}");
        assert!(j["pass"].as_bool().unwrap());
    }
    let (code, j) = hgm(&["gale", "--input", p]);
    assert_eq!(code, 0);
    assert_eq!(j["outputs"]["gale"]["degree"], 4);
    assert_eq!(j["outputs"]["fan"]["staircase_simplicial"], true);
}

#[test]
fn cover_count() {
    let (code, j) = hgm(&[
        "count", "--compactification", "cover", "--gamma", "-1,-1,1,1", "--delta", "1,-1,0,0", "--N", "3", "--q", "13",
        "--t", "1", "--verify",
    ]);
    assert_eq!(code, 0);
    assert_eq!(j["outputs"]["rounded"], 25);
}

#[test]
fn budget_is_enforced() {
    let (code, _) = hgm(&["--budget", "10", "dwork", "--d", "2", "--q", "7", "--u", "1", "--verify"]);
    assert_eq!(code, 2);
}
