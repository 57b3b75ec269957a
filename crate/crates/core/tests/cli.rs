use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn quadforge(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadforge"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("QUADFORGE_OUT")
        .output()
        .unwrap()
}

fn manifest(out: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn null_radii_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = quadforge(
        &["null-radii", "--n", "2", "--k", "1", "--count", "3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let radii: Vec<f64> = serde_json::from_slice(&out.stdout).unwrap();
    let expected = [3.831705970207512, 7.015586669815619, 10.173468135062722];
    for (r, e) in radii.iter().zip(expected) {
        assert!((r - e).abs() < 1e-10);
    }
    assert!(dir.path().join("radii.json").exists());
}

#[test]
fn radial_writes_manifest_and_profile() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "radial", "--lambda", "2", "--a", "10", "--b", "1", "--r1", "0.25",
    ];
    let out = quadforge(&args, dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m = manifest(dir.path());
    assert_eq!(m["command"], "radial");
    for key in ["rho", "Rprime", "c1", "ode_residual"] {
        assert!(m["values"][key].is_number(), "{key}");
    }
    assert!(m["values"]["ode_residual"].as_f64().unwrap() < 1e-8);
    assert!(dir.path().join("profile.csv").exists());
    assert!(dir.path().join("timing.json").exists());
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = quadforge(
        &[
            "radial", "--lambda", "2", "--a", "1", "--b", "2", "--r1", "0.25",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a > b"));
    let out = quadforge(&["null-radii", "--colour", "red"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = quadforge(
        &[
            "minimize", "--lambda", "2", "--a", "10", "--b", "1", "--r1", "0.25", "--m", "32",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_environment_output() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(
        &config,
        r#"{"command": "null-radii", "n": 3, "k": 2.0, "count": 2}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("env-out");
    let status = Command::new(env!("CARGO_BIN_EXE_quadforge"))
        .args(["null-radii", "--config"])
        .arg(&config)
        .env("QUADFORGE_OUT", &out_dir)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let m = manifest(&out_dir);
    let radii = m["values"]["radii"].as_array().unwrap();
    assert!((radii[0].as_f64().unwrap() - 4.493409457909064 / 2.0).abs() < 1e-10);
    let wrong = quadforge(
        &["radial", "--config", config.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "minimize",
        "--lambda",
        "2",
        "--a",
        "10",
        "--b",
        "1",
        "--r1",
        "0.25",
        "--m",
        "65",
        "--max-sweeps",
        "2",
    ];
    assert_eq!(quadforge(&args, dir.path()).status.code(), Some(3));
}

#[test]
fn runs_are_reproducible() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let args = [
        "minimize", "--lambda", "2", "--a", "10", "--b", "1", "--r1", "0.25", "--g", "0.2", "--m",
        "33", "--seed", "5",
    ];
    for d in &dirs {
        assert_eq!(quadforge(&args, d.path()).status.code(), Some(0));
    }
    let m = manifest(dirs[0].path());
    assert_eq!(m["seed"], 5);
    let names: Vec<String> = m["artifacts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert!(names.iter().any(|n| n == "u.csv"));
    for name in names.iter().map(String::as_str).chain(["manifest.json"]) {
        let a = fs::read(dirs[0].path().join(name)).unwrap();
        let b = fs::read(dirs[1].path().join(name)).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn every_command_runs() {
    let base = [
        "--lambda", "2", "--a", "10", "--b", "1", "--r1", "0.25", "--g", "0.2",
    ];
    let cases: [(&str, &[&str], &str); 5] = [
        ("minimize", &["--m", "65"], "energy_log.csv"),
        (
            "verify",
            &["--m", "65", "--circle-nodes", "256", "--waves", "8"],
            "residuals.json",
        ),
        ("nonscatter", &["--m", "129"], "contrast.json"),
        ("sweep-lambda", &["--m", "65"], "sweep.csv"),
        ("thresholds", &[], "manifest.json"),
    ];
    for (command, extra, artifact) in cases {
        let dir = tempfile::tempdir().unwrap();
        let mut args = vec![command];
        match command {
            "sweep-lambda" => args.extend([
                "--lambdas",
                "[1, 2]",
                "--a",
                "10",
                "--b",
                "1",
                "--r1",
                "0.25",
            ]),
            "thresholds" => args.extend([
                "--beta", "2", "--eps", "0.1", "--b", "1", "--b0", "1", "--mass", "10",
            ]),
            _ => args.extend(base),
        }
        args.extend(extra);
        let out = quadforge(&args, dir.path());
        assert_eq!(
            out.status.code(),
            Some(0),
            "{command}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(dir.path().join(artifact).exists(), "{command}");
    }
}
