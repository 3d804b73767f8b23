use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use eie_core::{parse_csv, CSV_HEADER};

fn eie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn point_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "p.toml", "[system]\ngamma12_mhz = 0.0\n");
    let out = dir.path().join("p.json");
    let o = eie(&["point", "--config", &cfg, "--out", out.to_str().unwrap(), "--quiet"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stderr.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["report"]["v12"], 4.0);
    assert_eq!(v["report"]["entangled"], false);
    assert_eq!(v["steady_state"]["dark_state"], true);
}

#[test]
fn point_to_stdout_with_omega_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "p.toml", "");
    let o = eie(&["point", "--config", &cfg, "--omega", "-2.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["omega"], -2.5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("V12 ="));
}

#[test]
fn sweep_writes_csv_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "[sweep]\npreset = \"fig3\"\npoints = 6\n",
    );
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, jobs) in [(&a, "1"), (&b, "3")] {
        let o = eie(&["sweep", "--config", &cfg, "--out", path.to_str().unwrap(), "--jobs", jobs, "--quiet"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(parse_csv(text.as_bytes()).unwrap().len(), 6);
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", "[system]\nnot_a_key = 1\n");
    let no_sweep = write(dir.path(), "ns.toml", "");
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    for args in [
        vec!["point", "--config", &bad],
        vec!["point", "--config", "/nonexistent/eie.toml"],
        vec!["sweep", "--config", &no_sweep, "--out", out],
        vec!["sweep", "--config", &no_sweep],
        vec!["frobnicate"],
    ] {
        let o = eie(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn numerical_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "n.toml",
        "[system]\ngamma12_mhz = 0.0\nalpha1 = 0.0\nalpha2 = 0.0\n",
    );
    let o = eie(&["point", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("steady-state"));

    // Per-point failures still write every row.
    let cfg = write(
        dir.path(),
        "ns.toml",
        "[system]\nalpha1 = 0.0\nalpha2 = 0.0\n[sweep]\npreset = \"custom\"\nvariable = \"gamma12\"\nstart = 0.0\nstop = 1.0\npoints = 2\n",
    );
    let out = dir.path().join("n.csv");
    let o = eie(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(2));
    let rows = parse_csv(fs::read(&out).unwrap().as_slice()).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.v12.is_none()));
}

#[test]
fn help_and_version_succeed() {
    assert!(eie(&["--help"]).status.success());
    assert!(eie(&["--version"]).status.success());
}
