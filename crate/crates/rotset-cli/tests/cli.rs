//! End-to-end tests of the `rotset` binary: flag handling, file outputs,
//! exit codes, and run-to-run determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

/// A command for the built binary, isolated from the ambient environment.
fn rotset() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rotset"));
    cmd.env_remove("ROTSET_OUT_DIR");
    cmd
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("spawning the binary");
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    );
    out
}

fn read_json(dir: &Path, stem: &str) -> Value {
    let path = dir.join(format!("{stem}.json"));
    let text = fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    serde_json::from_str(&text).expect("report is valid JSON")
}

fn read_csv_lines(dir: &Path, name: &str) -> Vec<String> {
    let path = dir.join(name);
    let text = fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    text.lines().map(str::to_string).collect()
}

#[test]
fn observable_identity_produces_zero_vectors() {
    let dir = TempDir::new().unwrap();
    run_ok(rotset().args([
        "observable",
        "--map",
        "identity",
        "--random",
        "10",
        "--length",
        "5",
        "--seed",
        "3",
        "--out",
    ])
    .arg(dir.path()));

    let lines = read_csv_lines(dir.path(), "observable_identity.csv");
    assert_eq!(lines[0], "start_x,start_y,len,vx,vy");
    assert_eq!(lines.len(), 11);
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[2], "5");
        assert_eq!(cols[3], "0");
        assert_eq!(cols[4], "0");
    }

    let rep = read_json(dir.path(), "observable_identity");
    assert_eq!(rep["schema_version"], 1);
    assert_eq!(rep["tool"]["name"], "rotset");
    assert_eq!(rep["vectors"]["kind"], "real");
    let entries = rep["vectors"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 10);
    assert_eq!(entries[0]["len"], 5);
    assert_eq!(entries[0]["vector"], serde_json::json!([0.0, 0.0]));
}

#[test]
fn unknown_map_is_rejected() {
    let dir = TempDir::new().unwrap();
    let out = rotset()
        .args(["observable", "--map", "nosuchmap", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"), "stderr: {err}");
    assert!(err.contains("nosuchmap"), "stderr: {err}");
}

#[test]
fn discretized_translation_emits_exact_rationals() {
    let dir = TempDir::new().unwrap();
    run_ok(rotset().args([
        "discretized",
        "--map",
        "translation:0.25,0.25",
        "--n",
        "8",
        "--out",
    ])
    .arg(dir.path()));

    let lines = read_csv_lines(dir.path(), "discretized_translation_0.25_0.25_n8.csv");
    assert_eq!(
        lines,
        vec![
            "n,rot_num_x,rot_num_y,rot_den,vx,vy,min_period,multiplicity,basin_size".to_string(),
            "8,1,1,4,0.25,0.25,4,16,64".to_string(),
        ]
    );

    let rep = read_json(dir.path(), "discretized_translation_0.25_0.25_n8");
    assert_eq!(rep["vectors"]["kind"], "rational");
    let entries = rep["vectors"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["num_x"], 1);
    assert_eq!(entries[0]["num_y"], 1);
    assert_eq!(entries[0]["den"], 4);
    assert_eq!(entries[0]["vector"], serde_json::json!([0.25, 0.25]));
}

#[test]
fn asymptotic_union_collapses_duplicate_rationals() {
    let dir = TempDir::new().unwrap();
    run_ok(rotset().args([
        "asymptotic",
        "--map",
        "translation:0.25,0.25",
        "--n-min",
        "4",
        "--n-max",
        "16",
        "--step",
        "4",
        "--out",
    ])
    .arg(dir.path()));

    let stem = "asymptotic_translation_0.25_0.25_4_16_4";
    for n in [4u32, 8, 12, 16] {
        assert!(
            dir.path().join(format!("{stem}_n{n}.csv")).exists(),
            "missing the per-grid file for n = {n}"
        );
    }
    let lines = read_csv_lines(dir.path(), &format!("{stem}_union.csv"));
    assert_eq!(
        lines,
        vec![
            "rot_num_x,rot_num_y,rot_den,vx,vy,grid_count".to_string(),
            "1,1,4,0.25,0.25,4".to_string(),
        ]
    );

    let rep = read_json(dir.path(), stem);
    let entries = rep["vectors"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["grid_count"], 4);
}

#[test]
fn mean_of_the_conservative_composite_is_the_center() {
    let dir = TempDir::new().unwrap();
    run_ok(rotset().args(["mean", "--map", "f1", "--side", "512", "--out"]).arg(dir.path()));

    let rep = read_json(dir.path(), "mean_f1");
    let mean = rep["mean_vector"].as_array().unwrap();
    assert!((mean[0].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((mean[1].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert_eq!(rep["vectors"]["kind"], "none");
}

#[test]
fn hull_command_reads_points_and_measures_the_reference() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("cloud.csv");
    fs::write(
        &input,
        "vx,vy\n0,0\n1,0\n1,1\n0,1\n0.5,0.5\n0.25,0.75\n",
    )
    .unwrap();

    let out = run_ok(rotset()
        .args(["hull", "--input"])
        .arg(&input)
        .args(["--reference", "unit-square", "--out"])
        .arg(dir.path()));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("Hausdorff(hull, unit-square) = 0.000000"),
        "stdout: {stdout}"
    );

    let rep = read_json(dir.path(), "hull_cloud");
    assert_eq!(rep["hull"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(rep["hull"]["degenerate"], false);
    assert_eq!(rep["hausdorff_to_reference"], 0.0);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# defaults for the runs below\nmap = translation:0.25,0.25\nn = 8\n").unwrap();

    run_ok(rotset()
        .args(["discretized", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path()));
    assert!(dir.path().join("discretized_translation_0.25_0.25_n8.csv").exists());

    run_ok(rotset()
        .args(["discretized", "--config"])
        .arg(&cfg)
        .args(["--n", "4", "--out"])
        .arg(dir.path()));
    assert!(
        dir.path().join("discretized_translation_0.25_0.25_n4.csv").exists(),
        "the --n flag should override the config file"
    );
}

#[test]
fn config_keys_that_match_no_flag_are_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "map = identity\nbogus = 1\n").unwrap();

    let out = rotset()
        .args(["mean", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bogus"), "stderr: {err}");
}

#[test]
fn out_dir_env_var_is_the_fallback() {
    let dir = TempDir::new().unwrap();
    let mut cmd = rotset();
    cmd.env("ROTSET_OUT_DIR", dir.path());
    run_ok(cmd.args(["observable", "--map", "identity", "--random", "3", "--length", "2"]));
    assert!(dir.path().join("observable_identity.csv").exists());
}

#[test]
fn results_do_not_depend_on_the_thread_count() {
    let base = TempDir::new().unwrap();
    let args = [
        "observable",
        "--map",
        "f1",
        "--random",
        "64",
        "--length",
        "200",
        "--seed",
        "9",
    ];

    let default_dir = base.path().join("default");
    run_ok(rotset().args(args).arg("--out").arg(&default_dir));
    let single_dir = base.path().join("single");
    run_ok(rotset().args(args).args(["--threads", "1", "--out"]).arg(&single_dir));
    let rerun_dir = base.path().join("rerun");
    run_ok(rotset().args(args).arg("--out").arg(&rerun_dir));

    let reference = fs::read(default_dir.join("observable_f1.csv")).unwrap();
    assert_eq!(
        reference,
        fs::read(single_dir.join("observable_f1.csv")).unwrap(),
        "a single-threaded run must produce byte-identical vectors"
    );
    assert_eq!(
        reference,
        fs::read(rerun_dir.join("observable_f1.csv")).unwrap(),
        "a repeated run must produce byte-identical vectors"
    );
}

#[test]
fn plot_flag_adds_an_svg_without_changing_the_csv() {
    let base = TempDir::new().unwrap();
    let plain = base.path().join("plain");
    let plotted = base.path().join("plotted");
    let args = ["discretized", "--map", "f1", "--n", "32"];

    run_ok(rotset().args(args).arg("--out").arg(&plain));
    assert!(!plain.join("discretized_f1_n32.svg").exists());

    run_ok(rotset().args(args).args(["--plot", "--out"]).arg(&plotted));
    assert!(plotted.join("discretized_f1_n32.svg").exists());

    assert_eq!(
        fs::read(plain.join("discretized_f1_n32.csv")).unwrap(),
        fs::read(plotted.join("discretized_f1_n32.csv")).unwrap(),
    );
}

#[test]
fn reproduce_writes_a_plot_by_default_and_its_check_passes() {
    let dir = TempDir::new().unwrap();
    let out = run_ok(rotset().args(["reproduce", "5", "--out"]).arg(dir.path()));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("check PASS"), "stdout: {stdout}");
    assert!(dir.path().join("fig5.svg").exists());

    let rep = read_json(dir.path(), "fig5");
    assert_eq!(rep["check"]["ok"], true);
    assert_eq!(rep["vectors"]["kind"], "rational");
}

#[test]
fn reproduce_rejects_scale_for_the_union_sweep() {
    let dir = TempDir::new().unwrap();
    let out = rotset()
        .args(["reproduce", "7", "--scale", "0.5", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--scale does not apply"), "stderr: {err}");
}
