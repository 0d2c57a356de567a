//! Closed-form solver for the local-computing mode.
//!
//! With the decode rate pinned to the threshold, the optimum stretches
//! the reception slot to everything the computing slot does not need:
//! `tau_ipt* = T_b (f_op - K R_th)/f_op`, `tau_cpt* = K R_th T_b / f_op`,
//! and the PS ratio is the smallest value that still decodes at `R_th`.

use crate::error::{Feasibility, InfeasibleReason, Result};
use crate::numeric::pow2m1;
use crate::params::SystemParams;
use crate::solution::{Mode, ModeSolution};

/// Margin below 1 the PS ratio must keep; at exactly 1 the user harvests
/// nothing and the mode is vacuous.
pub const RHO_MARGIN: f64 = 1e-9;

/// Optimal reception slot, s. Zero or negative means the user's
/// processor cannot keep up.
pub fn optimal_tau_ipt(params: &SystemParams) -> f64 {
    params.t_b * (params.f_op - params.r_th * params.k_ops) / params.f_op
}

/// Smallest PS ratio that decodes at the rate threshold when the
/// reception slot is at its optimum.
pub fn optimal_rho(params: &SystemParams, g_ap_u: f64) -> f64 {
    let exponent =
        params.r_th * params.f_op / (params.bandwidth * (params.f_op - params.k_ops * params.r_th));
    params.noise_n / (params.p_ap * g_ap_u) * pow2m1(exponent)
}

/// Whether the local mode admits any operating point for this gain.
pub fn local_feasible(params: &SystemParams, g_ap_u: f64) -> Feasibility {
    if params.k_ops * params.r_th >= params.f_op {
        return Feasibility::Infeasible(InfeasibleReason::ComputeTooSlow);
    }
    if optimal_rho(params, g_ap_u) > 1.0 - RHO_MARGIN {
        return Feasibility::Infeasible(InfeasibleReason::ChannelTooWeak);
    }
    Feasibility::Feasible
}

/// Minimum-energy local operating point.
///
/// `iota` is the broadcast-energy credit accumulated from earlier blocks
/// and `e_s` the stored energy; both enter the ledger as credits only.
pub fn solve_local(
    params: &SystemParams,
    g_ap_u: f64,
    iota: f64,
    e_s: f64,
) -> Result<ModeSolution> {
    if let Feasibility::Infeasible(r) = local_feasible(params, g_ap_u) {
        return Err(r.into());
    }
    let tau_ipt = optimal_tau_ipt(params);
    let tau_cpt = params.k_ops * params.r_th * params.t_b / params.f_op;
    let rho = optimal_rho(params, g_ap_u);
    let bits = params.bits_per_block();

    let e_id = params.xi * bits;
    let e_cpt = params.energy_per_op() * params.k_ops * bits;
    let e_eh = params.eta * (1.0 - rho) * params.p_ap * g_ap_u * tau_ipt + iota;
    let e_u = e_id + e_cpt - e_eh - e_s;

    Ok(ModeSolution {
        mode: Mode::Local,
        tau_ipt,
        tau_cpt,
        tau_uf: 0.0,
        tau_fogcpt: 0.0,
        tau_fu: 0.0,
        rho,
        p_uf: 0.0,
        e_id,
        e_cpt,
        e_uf: 0.0,
        e_eh,
        e_u,
    })
}
