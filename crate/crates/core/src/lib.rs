//! Minimum-energy operating points for wirelessly powered sensors that
//! split received power between decoding and harvesting, and either
//! process their data locally or offload it to a nearby fog server.
//!
//! The crate provides:
//! - the physical model (indoor path loss, Rician fading, matched-filter
//!   beamforming) and reproducible channel generation,
//! - closed-form and semi-closed-form per-block solvers for both
//!   processing modes plus the mode decision,
//! - TDMA user scheduling over a frame with broadcast-energy credit,
//! - a frame-by-frame battery simulation with harvest-only fallback,
//! - deployment analytics (maximum tolerable path loss, complexity and
//!   result-scaling thresholds) cross-checked by root finders,
//! - brute-force lattice oracles used to validate the solvers.

pub mod analysis;
pub mod channel;
pub mod config;
pub mod error;
pub mod frame;
pub mod geometry;
pub mod local;
pub mod mode;
pub mod numeric;
pub mod offload;
pub mod oracle;
pub mod params;
pub mod schedule;
pub mod solution;

pub use channel::{
    gain_from_db, gen_channel, mrt_effective_gain, path_loss_db, perturb_csi, stream,
    ChannelRealization, LinkGains, StreamTag, D_MIN,
};
pub use config::{parse_config, Config};
pub use error::{Error, Feasibility, InfeasibleReason, Result};
pub use frame::{run_frames, run_frames_capped, step_block, BatteryState, BlockMode, FrameTrace};
pub use geometry::Geometry;
pub use local::{local_feasible, solve_local};
pub use mode::select_mode;
pub use offload::{
    offload_budget, offload_feasible, reduced_objective, reduced_objective_slope, solve_offload,
    OffloadBudget, OffloadOutcome,
};
pub use oracle::{grid_search_local, grid_search_offload, GridPoint};
pub use params::{dbm_to_watts, SystemParams};
pub use schedule::{
    broadcast_increment, exhaustive_schedule, greedy_schedule, random_schedule, BlockOutcome,
    Schedule,
};
pub use solution::{Mode, ModeSolution};
