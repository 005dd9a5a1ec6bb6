use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadspec")).args(args).output().expect("spawn quadspec")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("quadspec-cli-{}-{name}", std::process::id()))
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "--fixture", "kfp"]).status.code(), Some(0));
    assert_eq!(run(&["analyze", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--input", "/nonexistent/q.json"]).status.code(), Some(2));
    assert_eq!(run(&["projnorm", "--fixture", "kfp", "--alpha", "1,2,3"]).status.code(), Some(2));
    // boundary of the elliptic range: the stable plane degenerates
    assert_eq!(run(&["reduce", "--fixture", "davies", "--theta", "0.785398163397"]).status.code(), Some(3));
}

#[test]
fn malformed_input_is_an_input_error() {
    let p = tmp("bad.json");
    std::fs::write(&p, r#"{"n": 1, "Q": [[[1, 0], [0, 0]], [[0, 1], [1, 0]]]}"#).unwrap();
    let out = run(&["analyze", "--input", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["spectrum", "--fixture", "kfp", "--format", "csv"][..],
        &["projnorm", "--fixture", "kfp", "--all-upto", "4"][..],
        &["growth", "--fixture", "davies", "--sweep", "6"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn reduced_weight_file_round_trips() {
    let p = tmp("kfp.json");
    let out = run(&["reduce", "--fixture", "kfp", "--output", p.to_str().unwrap()]);
    assert!(out.status.success());
    let from_file = json(&["projnorm", "--weight-file", p.to_str().unwrap(), "--alpha", "2,1"]);
    std::fs::remove_file(&p).ok();
    let direct = json(&["projnorm", "--fixture", "kfp", "--alpha", "2,1"]);
    let (x, y) = (from_file[0]["norm"].as_f64().unwrap(), direct[0]["norm"].as_f64().unwrap());
    assert!((x - y).abs() <= 1e-12 * y, "{x} vs {y}");
    assert!((y - 32f64.sqrt()).abs() <= 1e-9);
}

#[test]
fn known_values() {
    let g = json(&["growth", "--fixture", "kfp", "--beta", "0.5,0.5"]);
    let rate = g["rates"][0]["g"].as_f64().unwrap();
    assert!((rate - 1f64.asinh()).abs() <= 1e-10, "{rate}");
    let h = json(&["projnorm", "--fixture", "harmonic", "--alpha", "3,2"]);
    assert!((h[0]["norm"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn reals_have_seventeen_significant_digits() {
    let out = run(&["spectrum", "--fixture", "davies", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let field = text.lines().nth(1).unwrap().split(',').next().unwrap();
    let mantissa = field.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{field}");
}

#[test]
fn anisotropic_weights_integrate() {
    let p = tmp("jordan.json");
    assert!(run(&["reduce", "--fixture", "jordan", "--eps", "0.01", "--output", p.to_str().unwrap()]).status.success());
    let v = json(&["projnorm", "--weight-file", p.to_str().unwrap(), "--alpha", "3,1"]);
    std::fs::remove_file(&p).ok();
    let norm = v[0]["norm"].as_f64().unwrap();
    assert!(norm.is_finite() && norm > 1.0, "{norm}");
}
