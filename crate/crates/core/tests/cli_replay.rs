use std::fs;
use std::path::{Path, PathBuf};

use fprmt::cli::{main_with_args, manifest_path, RunManifest};
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fprmt-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("fprmt").chain(args.iter().copied()))
}

fn without_duration(mut v: Value) -> Value {
    if let Some(m) = v.get_mut("manifest").and_then(Value::as_object_mut) {
        m.remove("duration_seconds");
    }
    v
}

fn assert_same_output(a: &Path, b: &Path) {
    let (ta, tb) = (fs::read_to_string(a).unwrap(), fs::read_to_string(b).unwrap());
    if a.extension().is_some_and(|e| e == "json") {
        let va: Value = serde_json::from_str(&ta).unwrap();
        let vb: Value = serde_json::from_str(&tb).unwrap();
        assert_eq!(without_duration(va), without_duration(vb));
    } else {
        assert_eq!(ta, tb);
    }
}

fn check_csv_schema(path: &Path) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    assert!(header.iter().all(|h| !h.is_empty() && h.parse::<f64>().is_err()), "{header:?}");
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), header.len(), "{line}");
        for f in fields {
            if f.contains('e') && f.parse::<f64>().is_ok() {
                // d.dddddddddddddddde±x: 17 significant digits
                let mantissa = f.trim_start_matches('-').split('e').next().unwrap();
                assert_eq!(mantissa.replace('.', "").len(), 17, "{f}");
            }
        }
    }
}

fn replay_roundtrip(name: &str, ext: &str, args: &[&str]) -> PathBuf {
    let dir = scratch(name);
    let first = dir.join(format!("first.{ext}"));
    let second = dir.join(format!("second.{ext}"));
    let mut full: Vec<&str> = args.to_vec();
    let first_s = first.to_str().unwrap().to_owned();
    full.extend(["--out", &first_s]);
    let code = run(&full);
    assert!(code == 0 || code == 3, "{name}: exit {code}");
    // JSON outputs embed their manifest; CSV outputs get a sidecar
    let manifest = if ext == "json" { first.clone() } else { manifest_path(&first) };
    assert!(manifest.exists());
    let m = RunManifest::read(&manifest).unwrap();
    assert_eq!(m.subcommand, args[0]);
    let replay_code = run(&["replay", manifest.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert_eq!(replay_code, code);
    assert_same_output(&first, &second);
    if ext == "csv" {
        check_csv_schema(&first);
    }
    first
}

#[test]
fn det_curve_replays_and_echoes_the_grid() {
    let out = replay_roundtrip(
        "det-curve",
        "csv",
        &["det-curve", "--depth", "2", "--dim", "6", "--sigma-hat-grid", "0.2:2:4", "--samples", "200", "--seed", "4", "--workers", "2"],
    );
    let text = fs::read_to_string(out).unwrap();
    let first_col: Vec<f64> =
        text.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(first_col, vec![0.2, 0.2 + 1.8 / 3.0, 0.2 + 3.6 / 3.0, 2.0]);
}

#[test]
fn subleading_replays() {
    replay_roundtrip(
        "subleading",
        "csv",
        &["subleading", "--dim", "6", "--nu", "0", "--nu", "1", "--sigma-hat-grid", "0.8:1.6:3", "--samples", "200", "--workers", "3"],
    );
}

#[test]
fn density_replays() {
    replay_roundtrip(
        "density",
        "csv",
        &["density", "--depth", "1", "--dim", "4", "--bins", "20", "--samples", "300", "--seed", "9"],
    );
    replay_roundtrip(
        "density-complex",
        "csv",
        &["density", "--depth", "2", "--dim", "20", "--part", "complex-modulus", "--scaled", "--bins", "20", "--samples", "50"],
    );
}

#[test]
fn verify_theorem_replays() {
    let out = replay_roundtrip(
        "verify-theorem",
        "json",
        &["verify-theorem", "--sigma", "1", "--samples", "2000", "--matrix-samples", "20000", "--seed", "3"],
    );
    let v: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    for key in ["manifest", "inputs", "results", "pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_lemma_replays() {
    replay_roundtrip(
        "verify-lemma",
        "json",
        &["verify-lemma", "--depth", "1", "--dim", "1", "--sigma", "1", "--samples", "20000", "--seed", "2"],
    );
}

#[test]
fn field_gallery_replays() {
    replay_roundtrip("field-gallery", "csv", &["field-gallery", "--sigma", "0.2", "--sigma", "1", "--seed", "8"]);
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = scratch("usage");
    let out = dir.join("x.csv");
    let out = out.to_str().unwrap();
    assert_eq!(run(&["det-curve", "--depth", "1", "--dim", "5", "--sigma-hat-grid", "1:2", "--out", out]), 1);
    assert_eq!(run(&["no-such-command"]), 1);
    assert_eq!(run(&["verify-lemma", "--depth", "3", "--dim", "2", "--out", out]), 1);
}

#[test]
fn truncated_domain_fails_verification() {
    // fixed points beyond |x| = 2 are never seen, so the field side is low
    let dir = scratch("fail");
    let out = dir.join("t.json");
    let code = run(&[
        "verify-theorem", "--sigma", "5", "--grid-L", "2", "--samples", "2000",
        "--matrix-samples", "20000", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = scratch("env");
    let a = dir.join("a.csv");
    std::env::set_var("FPRMT_SEED", "1234");
    assert_eq!(run(&["field-gallery", "--sigma", "1", "--out", a.to_str().unwrap()]), 0);
    std::env::remove_var("FPRMT_SEED");
    assert_eq!(RunManifest::read(&manifest_path(&a)).unwrap().seed, 1234);
}
