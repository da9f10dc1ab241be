use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use vpair::states::{maximally_mixed, product_state, DensityMatrix, Level};

fn vpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vpair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_state(dir: &Path, name: &str, rho: &DensityMatrix) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, rho.to_json()).unwrap();
    path
}

/// Data rows of a CSV file, split on commas.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

fn stderr_line(out: &Output) -> String {
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "stderr: {err}");
    err
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = TempDir::new().unwrap();
    for cmd in ["fig3", "region-sample", "fig2"] {
        let a = dir.path().join(format!("{cmd}-a.csv"));
        let b = dir.path().join(format!("{cmd}-b.csv"));
        for path in [&a, &b] {
            let out = vpair(&[
                cmd,
                "--samples",
                "300",
                "--seed",
                "17",
                "--out",
                path.to_str().unwrap(),
            ]);
            assert!(out.status.success());
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{cmd}");
    }
    let other = dir.path().join("other.csv");
    vpair(&[
        "region-sample",
        "--samples",
        "300",
        "--seed",
        "18",
        "--out",
        other.to_str().unwrap(),
    ]);
    assert_ne!(
        fs::read(&other).unwrap(),
        fs::read(dir.path().join("region-sample-a.csv")).unwrap()
    );
}

#[test]
fn header_records_the_configuration() {
    let out = vpair(&["fig1", "--gamma", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# gamma = 2\n"));
    assert!(text.contains("# t_final = 20\n"));
    assert!(text.contains("# dt = 0.0005\n"));
    assert!(text.lines().any(|l| l == "phi,negativity"));
}

#[test]
fn ground_state_measures() {
    let dir = TempDir::new().unwrap();
    let state = write_state(
        dir.path(),
        "g.json",
        &product_state(Level::Three, Level::Three),
    );
    let out = vpair(&["measures", "--state", state.to_str().unwrap()]);
    assert!(out.status.success());
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r.len(), 1);
    assert_eq!(num(&r[0][0]), 0.0);
    assert_eq!(num(&r[0][2]), 0.0);
    assert_eq!(r[0][3], "true");
}

#[test]
fn fig1_reaches_the_pure_state_value() {
    let r = rows(&String::from_utf8(vpair(&["fig1"]).stdout).unwrap());
    assert_eq!(r.len(), 201);
    let last = &r[200];
    assert!((num(&last[0]) - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    assert!((num(&last[1]) - (2f64.sqrt() - 1.0) / 4.0).abs() < 1e-9);
    assert!((num(&r[0][1]) - (6f64.sqrt() - 2.0) / 8.0).abs() < 1e-9);
}

#[test]
fn fig4_initial_states_are_ppt_with_entangled_limits() {
    let r = rows(&String::from_utf8(vpair(&["fig4"]).stdout).unwrap());
    assert_eq!(r.len(), 99);
    for row in &r {
        assert!(num(&row[3]) >= -1e-10);
        assert!(num(&row[1]) > 0.0);
    }
}

#[test]
fn curves_have_enough_points() {
    let r = rows(&String::from_utf8(vpair(&["curves"]).stdout).unwrap());
    for label in ["k1", "k2", "k3"] {
        assert!(r.iter().filter(|row| row[0] == label).count() >= 500);
    }
}

#[test]
fn spectrum_reports_kernel() {
    let text = String::from_utf8(vpair(&["spectrum", "--regime", "large"]).stdout).unwrap();
    assert!(text.contains("# kernel_dimension = 1\n"));
    assert_eq!(rows(&text).len(), 81);
    let text = String::from_utf8(vpair(&["spectrum"]).stdout).unwrap();
    assert!(text.contains("# kernel_dimension = 9\n"));
}

#[test]
fn evolve_and_asymptotic_agree() {
    let dir = TempDir::new().unwrap();
    let state = write_state(
        dir.path(),
        "13.json",
        &product_state(Level::One, Level::Three),
    );
    let evolved = dir.path().join("evolved.json");
    let out = vpair(&[
        "evolve",
        "--state",
        state.to_str().unwrap(),
        "--out",
        evolved.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let limit = vpair(&["asymptotic", "--state", state.to_str().unwrap()]);
    let a = DensityMatrix::from_json(&fs::read_to_string(&evolved).unwrap()).unwrap();
    let b = DensityMatrix::from_json(&String::from_utf8(limit.stdout).unwrap()).unwrap();
    assert!(a.trace_distance(&b) < 1e-6);
}

#[test]
fn usage_errors_exit_1() {
    let out = vpair(&["bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = vpair(&["fig1", "--gamma", "fast"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(vpair(&["--help"]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    let out = vpair(&["measures", "--state", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    stderr_line(&out);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"dim": 9, "re": [[1.0]], "im": [[0.0]]}"#).unwrap();
    let out = vpair(&["asymptotic", "--state", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    stderr_line(&out);

    for args in [
        &["fig1", "--dt", "50"][..],
        &["fig1", "--gamma=-1"],
        &["region-sample", "--samples", "0"],
        &["fig1", "--tol", "0"],
        &["measures"],
    ] {
        let out = vpair(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        stderr_line(&out);
    }
}

#[test]
fn unstable_integration_exits_3() {
    let dir = TempDir::new().unwrap();
    let state = write_state(dir.path(), "mm.json", &maximally_mixed());
    let out = vpair(&[
        "evolve",
        "--state",
        state.to_str().unwrap(),
        "--dt",
        "4",
        "--t-final",
        "40",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_line(&out).contains("numerical"));
}
