//! End-to-end checks of the binary: exit codes, file outputs, and
//! byte-identical reruns.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_swipt-fog"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("swipt-fog-cli-{name}"));
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[test]
fn unknown_scenario_exits_2() {
    let out = tmp("unknown");
    let status = bin()
        .args(["not-a-scenario", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn unwritable_out_dir_exits_3() {
    let status = bin()
        .args(["sweep-k", "--out", "/proc/definitely/not/writable"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn invalid_config_exits_4_and_writes_nothing() {
    let out = tmp("badconfig");
    let cfg = std::env::temp_dir().join("swipt-fog-bad.cfg");
    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    let status = bin()
        .args(["sweep-k", "--config"])
        .arg(&cfg)
        .args(["--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
    assert!(!out.join("sweep-k.csv").exists());
}

#[test]
fn zero_realizations_exit_4() {
    let out = tmp("zeroreal");
    let status = bin()
        .args(["sweep-k", "--realizations", "0", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
    assert!(!out.join("sweep-k.csv").exists());
}

#[test]
fn sweep_k_writes_expected_files_and_is_reproducible() {
    let out = tmp("repro");
    let run = |dir: &PathBuf| {
        let status = bin()
            .args(["sweep-k", "--realizations", "20", "--seed", "7", "--out"])
            .arg(dir)
            .env("SWIPT_FOG_THREADS", "2")
            .status()
            .unwrap();
        assert!(status.success());
    };
    run(&out);
    for suffix in ["csv", "columns.txt", "manifest.json"] {
        assert!(
            out.join(format!("sweep-k.{suffix}")).exists(),
            "missing sweep-k.{suffix}"
        );
    }
    let first = fs::read(out.join("sweep-k.csv")).unwrap();
    // CSV holds the K column and both mode means.
    let text = String::from_utf8(first.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,mean_e_u_local,mean_e_u_offload,n_feasible_local,n_feasible_offload"
    );
    let first_row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first_row[0], "100");
    assert_eq!(text.lines().count(), 62); // header + 61 sweep points

    let out2 = tmp("repro2");
    run(&out2);
    let second = fs::read(out2.join("sweep-k.csv")).unwrap();
    assert_eq!(first, second, "rerun must be byte-identical");
}

#[test]
fn config_file_is_honored() {
    let out = tmp("configured");
    let cfg = std::env::temp_dir().join("swipt-fog-good.cfg");
    fs::write(
        &cfg,
        "# tighter rate target\nr_th = 4e4\nnoise_dbm = -120\nmu_pos = 0,12\n",
    )
    .unwrap();
    let status = bin()
        .args([
            "placement-grid",
            "--realizations",
            "5",
            "--grid-res",
            "5",
            "--config",
        ])
        .arg(&cfg)
        .args(["--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest = fs::read_to_string(out.join("placement-grid.manifest.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    assert_eq!(v["config"]["params"]["r_th"], 4e4);
    assert_eq!(v["config"]["params"]["noise_n"], 1e-15);
    assert_eq!(v["scenario"], "placement-grid");
}

#[test]
fn frames_scenario_writes_trace() {
    let out = tmp("frames");
    let status = bin()
        .args(["frames", "--realizations", "5", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let trace = fs::read_to_string(out.join("frames.trace.csv")).unwrap();
    assert!(trace.starts_with("frame,mu,mode,e_s,e_u,e_eh"));
    assert_eq!(trace.lines().count(), 101); // header + 100 frames x 1 user
}
