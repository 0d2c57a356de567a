//! Frame-by-frame operation: battery bookkeeping with the harvest-only
//! fallback when the stored energy cannot cover a block's discharge.
//!
//! The per-block optimizers treat stored energy as a plain additive
//! credit, so they are called with `e_s = 0` here and the battery is
//! settled separately: a block is served iff its required discharge
//! `max(e_u, 0)` fits in the battery, and surplus blocks (`e_u < 0`)
//! charge it.

use std::io::Write;

use crate::channel::{gen_channel, ChannelRealization};
use crate::error::Result;
use crate::geometry::Geometry;
use crate::mode::select_mode;
use crate::params::SystemParams;
use crate::schedule::{broadcast_increment, BlockOutcome};
use crate::solution::Mode;

/// One user's battery, J. Never negative; optionally capped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryState {
    pub e_s: f64,
}

impl BatteryState {
    pub fn new(e_s: f64) -> Self {
        assert!(e_s >= 0.0, "stored energy must be nonnegative");
        BatteryState { e_s }
    }
}

/// What one user's block in one frame looked like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockMode {
    Local,
    Offload,
    HarvestOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameRecord {
    pub frame: usize,
    pub mu: usize,
    pub mode: BlockMode,
    /// Battery at the end of the block, J.
    pub e_s: f64,
    /// Net required energy of the block (0 for harvest-only), J.
    pub e_u: f64,
    /// Energy harvested in the block, J.
    pub e_eh: f64,
}

/// Multi-frame trace of battery levels and block outcomes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrameTrace {
    pub records: Vec<FrameRecord>,
}

impl FrameTrace {
    pub fn harvest_only_blocks(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.mode == BlockMode::HarvestOnly)
            .count()
    }

    /// Battery levels of one user across frames, end-of-block snapshots.
    pub fn storage_of(&self, mu: usize) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| r.mu == mu)
            .map(|r| r.e_s)
            .collect()
    }

    /// CSV export: `frame,mu,mode,e_s,e_u,e_eh`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "frame,mu,mode,e_s,e_u,e_eh")?;
        for r in &self.records {
            let mode = match r.mode {
                BlockMode::Local => "local",
                BlockMode::Offload => "offload",
                BlockMode::HarvestOnly => "harvest_only",
            };
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.frame, r.mu, mode, r.e_s, r.e_u, r.e_eh
            )?;
        }
        Ok(())
    }
}

fn clip(e: f64, cap: Option<f64>) -> f64 {
    match cap {
        Some(c) => e.min(c),
        None => e,
    }
}

/// Advances one user by one block.
///
/// Serves when a mode is feasible and the required discharge fits the
/// battery; otherwise the whole block harvests with the splitter fully
/// on the harvester.
pub fn step_block(
    params: &SystemParams,
    battery: &BatteryState,
    channel: &ChannelRealization,
    iota: f64,
) -> (BlockOutcome, BatteryState) {
    step_block_capped(params, battery, channel, iota, None)
}

pub fn step_block_capped(
    params: &SystemParams,
    battery: &BatteryState,
    channel: &ChannelRealization,
    iota: f64,
    cap: Option<f64>,
) -> (BlockOutcome, BatteryState) {
    if let Ok(sol) = select_mode(params, &channel.gains(), iota, 0.0) {
        if sol.e_u.max(0.0) <= battery.e_s {
            let next = BatteryState::new(clip(battery.e_s - sol.e_u, cap).max(0.0));
            return (BlockOutcome::Served(sol), next);
        }
    }
    let e_eh = params.eta * params.p_ap * channel.g_ap_u * params.t_b + iota;
    let next = BatteryState::new(clip(battery.e_s + e_eh, cap));
    (BlockOutcome::HarvestOnly { e_eh }, next)
}

/// Runs `n_frames` frames: fresh block-fading channels each frame, the
/// greedy scheduler inside each frame, batteries carried across frames.
/// Deterministic per seed.
pub fn run_frames(
    params: &SystemParams,
    geometry: &Geometry,
    n_frames: usize,
    seed: u64,
) -> Result<FrameTrace> {
    run_frames_capped(params, geometry, n_frames, seed, None)
}

pub fn run_frames_capped(
    params: &SystemParams,
    geometry: &Geometry,
    n_frames: usize,
    seed: u64,
    cap: Option<f64>,
) -> Result<FrameTrace> {
    assert!(n_frames >= 1, "need at least one frame");
    params.validate()?;
    geometry.validate()?;
    let m = geometry.n_users();
    let mut batteries = vec![BatteryState::new(0.0); m];
    let mut trace = FrameTrace::default();

    for frame in 0..n_frames {
        let channels: Vec<ChannelRealization> = (0..m)
            .map(|i| gen_channel(params, geometry, i, frame as u64, seed))
            .collect::<Result<_>>()?;

        // Greedy order within the frame: serve the affordable user with
        // the smallest net energy; users who cannot serve fall behind
        // and harvest.
        let mut remaining: Vec<usize> = (0..m).collect();
        let mut iota = 0.0;
        while !remaining.is_empty() {
            let mut best: Option<(usize, f64)> = None;
            for &i in &remaining {
                if let Ok(sol) = select_mode(params, &channels[i].gains(), iota, 0.0) {
                    if sol.e_u.max(0.0) <= batteries[i].e_s {
                        let better =
                            best.map_or(true, |(bi, be)| sol.e_u < be || (sol.e_u == be && i < bi));
                        if better {
                            best = Some((i, sol.e_u));
                        }
                    }
                }
            }
            let mu = best.map(|(i, _)| i).unwrap_or(remaining[0]);
            let (outcome, next) =
                step_block_capped(params, &batteries[mu], &channels[mu], iota, cap);
            let tau = match &outcome {
                BlockOutcome::Served(s) => s.tau_ipt,
                BlockOutcome::HarvestOnly { .. } => params.t_b,
            };
            iota += broadcast_increment(params, channels[mu].g_ap_u, tau);
            batteries[mu] = next;
            let (mode, e_u, e_eh) = match &outcome {
                BlockOutcome::Served(s) => (
                    match s.mode {
                        Mode::Local => BlockMode::Local,
                        Mode::Offload => BlockMode::Offload,
                    },
                    s.e_u,
                    s.e_eh,
                ),
                BlockOutcome::HarvestOnly { e_eh } => (BlockMode::HarvestOnly, 0.0, *e_eh),
            };
            trace.records.push(FrameRecord {
                frame,
                mu,
                mode,
                e_s: batteries[mu].e_s,
                e_u,
                e_eh,
            });
            remaining.retain(|&x| x != mu);
        }
    }
    Ok(trace)
}
