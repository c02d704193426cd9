use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use specreg::problems::{abel_problem, gaussian_noise, NoiseSpec};
use tempfile::TempDir;

fn specreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specreg"))
        .args(args)
        .env_remove("SPECREG_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn generate(dir: &TempDir, name: &str, extra: &[&str]) -> PathBuf {
    let out = path(dir, name);
    let mut args = vec!["generate", "--output", s(&out)];
    args.extend_from_slice(extra);
    let res = specreg(&args);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    out
}

#[test]
fn generate_writes_rows_deterministically() {
    let dir = TempDir::new().unwrap();
    let flags = ["--problem", "craig-brown", "--m", "250", "--sigma", "0.05", "--seed", "42"];
    let a = generate(&dir, "a.csv", &flags);
    let b = generate(&dir, "b.csv", &flags);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().next(), Some("x,g,s"));
    assert_eq!(text.lines().count(), 251);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn generate_rejects_bad_arguments() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "x.csv");
    assert_eq!(code(&specreg(&["generate", "--sigma", "0", "-o", s(&out)])), 2);
    assert_eq!(code(&specreg(&["generate", "--problem", "nope", "-o", s(&out)])), 2);
    assert_eq!(code(&specreg(&["generate", "--m", "0", "-o", s(&out)])), 2);
    assert!(!out.exists());
}

#[test]
fn seed_environment_variable_wins() {
    let dir = TempDir::new().unwrap();
    let env_out = path(&dir, "env.csv");
    let res = Command::new(env!("CARGO_BIN_EXE_specreg"))
        .args(["generate", "--seed", "1", "-o", s(&env_out)])
        .env("SPECREG_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(code(&res), 0);
    let flag_out = generate(&dir, "flag.csv", &["--seed", "7"]);
    assert_eq!(fs::read(&env_out).unwrap(), fs::read(&flag_out).unwrap());
    let bad = Command::new(env!("CARGO_BIN_EXE_specreg"))
        .args(["generate", "-o", s(&path(&dir, "bad.csv"))])
        .env("SPECREG_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn regularize_round_trip_and_default_run() {
    let dir = TempDir::new().unwrap();
    let data = generate(&dir, "cb.csv", &[]);
    let report = path(&dir, "cb.json");
    let curves = path(&dir, "curves.csv");
    let res = specreg(&["regularize", "-i", s(&data), "-o", s(&report), "--curves", s(&curves)]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let v = json(&report);
    assert_eq!(v["diagnostics"]["pass_d1"], true);
    assert_eq!(v["diagnostics"]["m"], 250);
    assert_eq!(v["family"], "trig");

    let mut reader = csv::Reader::from_path(&data).unwrap();
    let rows: Vec<Vec<f64>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect();
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(v["data"]["x"][k].as_f64().unwrap(), row[0]);
        assert_eq!(v["data"]["g"][k].as_f64().unwrap(), row[1]);
        assert_eq!(v["data"]["s"][k].as_f64().unwrap(), row[2]);
    }
    let curve_text = fs::read_to_string(&curves).unwrap();
    assert_eq!(curve_text.lines().next(), Some("x,g_fit,f_hat"));
    assert_eq!(curve_text.lines().count(), 502);
}

#[test]
fn demote_override() {
    let dir = TempDir::new().unwrap();
    let data = generate(&dir, "cb.csv", &[]);
    let report = path(&dir, "out.json");
    let res = specreg(&["regularize", "-i", s(&data), "-o", s(&report), "--demote", "3,24"]);
    assert_eq!(code(&res), 0);
    let v = json(&report);
    let signal: Vec<u64> = v["split"]["signal_idx"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert!(!signal.contains(&24) && !signal.contains(&3));
    assert!(!signal.is_empty());
}

#[test]
fn noiseless_abel_curve_is_exact() {
    let dir = TempDir::new().unwrap();
    let data = generate(&dir, "abel.csv", &["--problem", "abel", "--noiseless", "--sigma", "1e-9"]);
    let report = path(&dir, "abel.json");
    let curves = path(&dir, "abel_curves.csv");
    let res = specreg(&[
        "regularize", "-i", s(&data), "-o", s(&report), "--curves", s(&curves),
        "--family", "fractional", "--mu", "0.5", "--n", "4",
    ]);
    // the residual of exact data is far below the noise level the file claims
    assert_eq!(code(&res), 3);
    assert_eq!(json(&report)["diagnostics"]["pass_d1"], false);
    let p = abel_problem();
    let mut reader = csv::Reader::from_path(&curves).unwrap();
    let mut worst = 0.0f64;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let x: f64 = rec[0].parse().unwrap();
        let f: f64 = rec[2].parse().unwrap();
        worst = worst.max((f - p.f(x)).abs());
    }
    assert!(worst <= 1e-8, "max error {worst}");
}

#[test]
fn regularize_input_errors() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "out.json");
    let bad = path(&dir, "bad.csv");
    fs::write(&bad, "x,g,s\n0.1,abc,0.05\n").unwrap();
    assert_eq!(code(&specreg(&["regularize", "-i", s(&bad), "-o", s(&out)])), 2);
    fs::write(&bad, "x,g\n0.1,1.0\n").unwrap();
    assert_eq!(code(&specreg(&["regularize", "-i", s(&bad), "-o", s(&out)])), 2);
    let missing = path(&dir, "missing.csv");
    assert_eq!(code(&specreg(&["regularize", "-i", s(&missing), "-o", s(&out)])), 2);
    let data = generate(&dir, "cb.csv", &[]);
    assert_eq!(
        code(&specreg(&["regularize", "-i", s(&data), "-o", s(&out), "--family", "fractional"])),
        2
    );
}

#[test]
fn rank_deficient_design_exits_4() {
    let dir = TempDir::new().unwrap();
    let data = path(&dir, "tiny.csv");
    let mut text = String::from("x,g,s\n");
    for k in 1..=20 {
        text.push_str(&format!("{},{},1\n", k as f64 * 1e-9, k as f64));
    }
    fs::write(&data, text).unwrap();
    let out = path(&dir, "out.json");
    let res = specreg(&["regularize", "-i", s(&data), "-o", s(&out), "--n", "5"]);
    assert_eq!(code(&res), 4, "{}", String::from_utf8_lossy(&res.stderr));
}

#[test]
fn discrete_method_runs() {
    let dir = TempDir::new().unwrap();
    let data = generate(&dir, "cb.csv", &["--problem", "craig-brown-original"]);
    let out = path(&dir, "d.json");
    let res = specreg(&["regularize", "-i", s(&data), "-o", s(&out), "--method", "discrete-svd"]);
    assert_eq!(code(&res), 0);
    let v = json(&out);
    assert_eq!(v["method"], "discrete-svd");
    assert_eq!(v["discrete"]["f_hat"].as_array().unwrap().len(), 250);
}

fn write_series(p: &Path, values: &[f64]) {
    let mut text = String::from("r\n");
    for v in values {
        text.push_str(&format!("{v}\n"));
    }
    fs::write(p, text).unwrap();
}

#[test]
fn diagnose_white_noise_and_sinusoid() {
    let dir = TempDir::new().unwrap();
    let noise = path(&dir, "noise.csv");
    write_series(&noise, &gaussian_noise(250, NoiseSpec::new(1.0, 42).unwrap()).unwrap());
    let report = path(&dir, "noise.json");
    let pgram = path(&dir, "pgram.csv");
    let cum = path(&dir, "cum.csv");
    let res = specreg(&[
        "diagnose", "-i", s(&noise), "-o", s(&report), "--periodogram", s(&pgram), "--cumulative", s(&cum),
    ]);
    assert_eq!(code(&res), 0);
    let v = json(&report);
    assert_eq!(v["pass_d3"], true);
    assert_eq!(v["q"], 128);
    assert_eq!(fs::read_to_string(&pgram).unwrap().lines().count(), 130);
    assert_eq!(fs::read_to_string(&cum).unwrap().lines().next(), Some("nu,cumulative,lower,upper"));

    let tone = path(&dir, "tone.csv");
    let values: Vec<f64> = (1..=250).map(|t| (0.4 * t as f64).sin()).collect();
    write_series(&tone, &values);
    let report = path(&dir, "tone.json");
    let res = specreg(&["diagnose", "-i", s(&tone), "-o", s(&report)]);
    assert_eq!(code(&res), 3);
    assert_eq!(json(&report)["pass_d3"], false);

    let empty = path(&dir, "empty.csv");
    fs::write(&empty, "r\n").unwrap();
    assert_eq!(code(&specreg(&["diagnose", "-i", s(&empty), "-o", s(&report)])), 2);
}
