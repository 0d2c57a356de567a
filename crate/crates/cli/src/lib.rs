//! Scenario implementations behind the `swipt-fog` binary. Each scenario
//! writes one CSV data file, a sidecar column-description file, and a
//! JSON run manifest into the output directory, and returns a summary
//! the integration tests consume directly.

pub mod output;
pub mod scenarios;

use std::path::PathBuf;

use swipt_fog_core::Config;

/// Everything a scenario needs to run.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub config: Config,
    pub out_dir: PathBuf,
    /// Channel realizations (or seeds) averaged per sweep point.
    pub realizations: usize,
    pub seed: u64,
    /// Cells per axis for the placement maps.
    pub grid_res: usize,
}

impl RunOptions {
    pub fn new(config: Config, out_dir: impl Into<PathBuf>) -> Self {
        RunOptions {
            config,
            out_dir: out_dir.into(),
            realizations: 200,
            seed: 1,
            grid_res: 41,
        }
    }
}

/// The scenario names the CLI accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    SweepK,
    SweepDist,
    LinePlacement,
    PlacementGrid,
    SweepPap,
    SweepBeta,
    Frames,
    Multiuser,
    CsiError,
}

impl Scenario {
    pub const ALL: [(&'static str, Scenario); 9] = [
        ("sweep-k", Scenario::SweepK),
        ("sweep-dist", Scenario::SweepDist),
        ("line-placement", Scenario::LinePlacement),
        ("placement-grid", Scenario::PlacementGrid),
        ("sweep-pap", Scenario::SweepPap),
        ("sweep-beta", Scenario::SweepBeta),
        ("frames", Scenario::Frames),
        ("multiuser", Scenario::Multiuser),
        ("csi-error", Scenario::CsiError),
    ];

    pub fn from_name(name: &str) -> Option<Scenario> {
        Self::ALL.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
    }

    pub fn name(&self) -> &'static str {
        Self::ALL
            .iter()
            .find(|(_, s)| s == self)
            .map(|(n, _)| *n)
            .expect("every scenario is listed")
    }
}

/// Caps the rayon pool from `SWIPT_FOG_THREADS` when set. Safe to call
/// repeatedly; only the first initialization wins.
pub fn init_threads() {
    if let Ok(v) = std::env::var("SWIPT_FOG_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}
