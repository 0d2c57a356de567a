//! Output files: CSV data, sidecar column documentation, run manifest.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::Duration;

use swipt_fog_core::{Config, SystemParams};

use crate::RunOptions;

/// Writes `<name>.csv` with the given header and rows. Numbers are
/// formatted with Rust's shortest round-trip `Display`, which is
/// locale-independent.
pub fn write_csv(dir: &Path, name: &str, header: &str, rows: &[Vec<f64>]) -> std::io::Result<()> {
    let mut f = fs::File::create(dir.join(format!("{name}.csv")))?;
    writeln!(f, "{header}")?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        writeln!(f, "{}", line.join(","))?;
    }
    Ok(())
}

/// Writes the sidecar `<name>.columns.txt` describing each CSV column.
pub fn write_columns(dir: &Path, name: &str, description: &str) -> std::io::Result<()> {
    fs::write(dir.join(format!("{name}.columns.txt")), description)
}

fn git_describe() -> String {
    Command::new("git")
        .args(["describe", "--always", "--dirty"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|o| String::from_utf8_lossy(&o.stdout).trim().to_string())
        .unwrap_or_else(|| "unknown".to_string())
}

fn params_json(p: &SystemParams) -> serde_json::Value {
    serde_json::json!({
        "p_ap": p.p_ap,
        "n_antennas": p.n_antennas,
        "bandwidth": p.bandwidth,
        "noise_n": p.noise_n,
        "noise_s": p.noise_s,
        "noise_f": p.noise_f,
        "rician_k_db": p.rician_k_db,
        "carrier_mhz": p.carrier_mhz,
        "pl_coeff": p.pl_coeff,
        "r_th": p.r_th,
        "t_b": p.t_b,
        "k_ops": p.k_ops,
        "eta": p.eta,
        "xi": p.xi,
        "p_uf_max": p.p_uf_max,
        "f_op": p.f_op,
        "f_fogop": p.f_fogop,
        "m_c": p.m_c,
        "act": p.act,
        "fanout": p.fanout,
        "n0_ln2": p.n0_ln2,
        "beta": p.beta,
        "p_fu_max": p.p_fu_max,
    })
}

fn config_json(c: &Config) -> serde_json::Value {
    serde_json::json!({
        "params": params_json(&c.params),
        "geometry": {
            "hap_pos": c.geometry.hap_pos,
            "fs_pos": c.geometry.fs_pos,
            "mu_pos": c.geometry.mu_pos,
        },
        "battery_cap": c.battery_cap,
    })
}

/// Writes `<name>.manifest.json` recording how the data was produced.
pub fn write_manifest(
    dir: &Path,
    name: &str,
    opts: &RunOptions,
    wall: Duration,
) -> std::io::Result<()> {
    let manifest = serde_json::json!({
        "scenario": name,
        "seed": opts.seed,
        "realizations": opts.realizations,
        "grid_res": opts.grid_res,
        "git": git_describe(),
        "wall_time_s": wall.as_secs_f64(),
        "config": config_json(&opts.config),
    });
    fs::write(
        dir.join(format!("{name}.manifest.json")),
        serde_json::to_string_pretty(&manifest)?,
    )
}
