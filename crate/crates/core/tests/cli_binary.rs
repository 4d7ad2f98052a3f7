use std::path::Path;
use std::process::Command;

use maxempty::cli::{parse_json, strip_wall_clock};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_maxempty"))
        .args(args)
        .env_remove("MAXEMPTY_SEED")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_output_round_trips_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    for (g, n, dim) in [("vdc", "32", "2"), ("halton", "20", "3"), ("uniform", "15", "4")] {
        let (code, json, _) = run(&["gen", "--generator", g, "--n", n, "--dim", dim, "--seed", "3"]);
        assert_eq!(code, 0);
        let (pts, _) = parse_json(&json).unwrap();
        let path = write(dir.path(), "pts.json", &json);
        let (code, report, err) = run(&["approx-box", "--input", &path]);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["n"].as_u64().unwrap() as usize, pts.len());
        let again = serde_json::to_string(&serde_json::from_str::<Value>(&json).unwrap()["points"]).unwrap();
        let orig: Vec<Vec<f64>> = serde_json::from_str(&again).unwrap();
        assert_eq!(orig, pts.to_vecs());
    }
}

#[test]
fn reports_are_deterministic_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let (_, json, _) = run(&["gen", "--generator", "uniform", "--n", "40", "--dim", "3", "--seed", "5"]);
    let path = write(dir.path(), "pts.json", &json);
    for cmd in ["approx-box", "approx-cube"] {
        let a = run(&[cmd, "--input", &path, "--epsilon", "0.2", "--threads", "1"]);
        let b = run(&[cmd, "--input", &path, "--epsilon", "0.2", "--threads", "4"]);
        assert_eq!(a.0, 0, "{}", a.2);
        assert_eq!(strip_wall_clock(&a.1).unwrap(), strip_wall_clock(&b.1).unwrap());
    }
}

#[test]
fn input_units_are_consistent_with_the_region() {
    let dir = tempfile::tempdir().unwrap();
    let csv = "x,y\n1,1\n3,2\n5,7\n8,4\n";
    let path = write(dir.path(), "pts.csv", csv);
    let (code, out, err) = run(&["approx-box", "--input", &path, "--epsilon", "0.1"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let region = &v["region"];
    let vol = |b: &Value| -> f64 {
        (0..2)
            .map(|i| b["hi"][i].as_f64().unwrap() - b["lo"][i].as_f64().unwrap())
            .product()
    };
    let unit = v["volume"]["unit"].as_f64().unwrap();
    let input = v["volume"]["input"].as_f64().unwrap();
    assert!((input - unit * vol(region)).abs() <= 1e-10 * input);
    assert!((vol(&v["result"]["input"]) - input).abs() <= 1e-10 * input);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["approx-box"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    let bad = write(dir.path(), "bad.csv", "0.1,0.2\n0.3,oops\n");
    let (code, _, err) = run(&["approx-box", "--input", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains('2'), "{err}");
    let ragged = write(dir.path(), "ragged.csv", "0.1,0.2\n0.3\n");
    assert_eq!(run(&["exact-box", "--input", &ragged]).0, 2);
    let missing = dir.path().join("missing.csv");
    assert_eq!(run(&["approx-box", "--input", missing.to_str().unwrap()]).0, 2);
    let (_, json, _) = run(&["gen", "--generator", "uniform", "--n", "20", "--dim", "2"]);
    let big = write(dir.path(), "big.json", &json);
    assert_eq!(run(&["exact-box", "--input", &big]).0, 3);
    assert_eq!(run(&["exact-box", "--input", &big, "--force"]).0, 0);
    let ok = write(dir.path(), "ok.csv", "0.5,0.5\n");
    assert_eq!(run(&["approx-box", "--input", &ok, "--epsilon", "1.5"]).0, 1);
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.csv", "0.3,0.6\n0.7,0.2\n");
    let with_env = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_maxempty"))
            .args(["approx-box", "--input", &path])
            .env("MAXEMPTY_SEED", seed)
            .output()
            .unwrap();
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["parameters"]["seed"].as_u64().unwrap()
    };
    assert_eq!(with_env("17"), 17);
    let (_, out, _) = run(&["approx-box", "--input", &path, "--seed", "4"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["parameters"]["seed"], 4);
}

#[test]
fn text_output_and_bounds() {
    let (code, out, _) = run(&["--output", "text", "bounds", "--n", "100", "--dim", "3", "--epsilon", "0.5"]);
    assert_eq!(code, 0);
    assert!(out.contains("0.24"), "{out}");
    let (code, out, _) = run(&["restricted-count", "--counts", "2,2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["restricted_count"].as_u64().unwrap() >= 9);
}
