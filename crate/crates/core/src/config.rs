//! Flat `key = value` parameter files.
//!
//! Keys are exactly the parameter field names; `hap_pos`, `fs_pos` and
//! `mu_pos` take comma-separated coordinates (`mu_pos` may hold several
//! positions separated by `;`). Noise powers can alternatively be given
//! in dBm through `noise_dbm` (all three receivers) or the per-receiver
//! `noise_n_dbm` / `noise_s_dbm` / `noise_f_dbm`. Unknown keys are
//! errors. Lines starting with `#` and blank lines are ignored.

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::params::{dbm_to_watts, SystemParams};

/// A parsed parameter file: system constants, node placement, and the
/// optional battery cap used by the frame simulator.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub params: SystemParams,
    pub geometry: Geometry,
    pub battery_cap: Option<f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            params: SystemParams::default(),
            geometry: Geometry::reference(vec![[0.0, 10.0]]).expect("valid reference geometry"),
            battery_cap: None,
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::InvalidParameter(format!("{key}: cannot parse `{value}` as a number")))
}

fn parse_pos(key: &str, value: &str) -> Result<[f64; 2]> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "{key}: expected `x,y`, got `{value}`"
        )));
    }
    Ok([parse_f64(key, parts[0])?, parse_f64(key, parts[1])?])
}

/// Parses a parameter file from text. Values not mentioned keep their
/// defaults; the result is validated before being returned.
pub fn parse_config(text: &str) -> Result<Config> {
    let mut p = SystemParams::default();
    let mut hap_pos = [0.0, 0.0];
    let mut fs_pos = [0.0, 20.0];
    let mut mu_pos = vec![[0.0, 10.0]];
    let mut battery_cap = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "p_ap" => p.p_ap = parse_f64(key, value)?,
            "n_antennas" => {
                p.n_antennas = value.parse::<usize>().map_err(|_| {
                    Error::InvalidParameter(format!("{key}: cannot parse `{value}` as an integer"))
                })?
            }
            "bandwidth" => p.bandwidth = parse_f64(key, value)?,
            "noise_n" => p.noise_n = parse_f64(key, value)?,
            "noise_s" => p.noise_s = parse_f64(key, value)?,
            "noise_f" => p.noise_f = parse_f64(key, value)?,
            "noise_dbm" => {
                let w = dbm_to_watts(parse_f64(key, value)?);
                p.noise_n = w;
                p.noise_s = w;
                p.noise_f = w;
            }
            "noise_n_dbm" => p.noise_n = dbm_to_watts(parse_f64(key, value)?),
            "noise_s_dbm" => p.noise_s = dbm_to_watts(parse_f64(key, value)?),
            "noise_f_dbm" => p.noise_f = dbm_to_watts(parse_f64(key, value)?),
            "rician_k_db" => p.rician_k_db = parse_f64(key, value)?,
            "carrier_mhz" => p.carrier_mhz = parse_f64(key, value)?,
            "pl_coeff" => p.pl_coeff = parse_f64(key, value)?,
            "r_th" => p.r_th = parse_f64(key, value)?,
            "t_b" => p.t_b = parse_f64(key, value)?,
            "k_ops" => p.k_ops = parse_f64(key, value)?,
            "eta" => p.eta = parse_f64(key, value)?,
            "xi" => p.xi = parse_f64(key, value)?,
            "p_uf_max" => p.p_uf_max = parse_f64(key, value)?,
            "f_op" => p.f_op = parse_f64(key, value)?,
            "f_fogop" => p.f_fogop = parse_f64(key, value)?,
            "m_c" => p.m_c = parse_f64(key, value)?,
            "act" => p.act = parse_f64(key, value)?,
            "fanout" => p.fanout = parse_f64(key, value)?,
            "n0_ln2" => p.n0_ln2 = parse_f64(key, value)?,
            "beta" => p.beta = parse_f64(key, value)?,
            "p_fu_max" => p.p_fu_max = parse_f64(key, value)?,
            "hap_pos" => hap_pos = parse_pos(key, value)?,
            "fs_pos" => fs_pos = parse_pos(key, value)?,
            "mu_pos" => {
                mu_pos = value
                    .split(';')
                    .map(|part| parse_pos(key, part))
                    .collect::<Result<Vec<_>>>()?;
            }
            "battery_cap" => battery_cap = Some(parse_f64(key, value)?),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "line {}: unknown key `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    p.validate()?;
    let geometry = Geometry::new(hap_pos, fs_pos, mu_pos)?;
    Ok(Config {
        params: p,
        geometry,
        battery_cap,
    })
}
