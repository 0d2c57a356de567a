//! Semi-closed-form solver for the fog-offloading mode.
//!
//! The fog-compute and feedback slots are pinned at their minima, the
//! rate constraints hold with equality at the optimum, and the problem
//! reduces to a strictly convex single-variable objective over the
//! reception slot. Its stationary point is found by bisection on the
//! analytic derivative; when the implied transmit power exceeds the
//! user's budget the solution clamps to maximum power.

use crate::channel::LinkGains;
use crate::error::{Error, Feasibility, InfeasibleReason, Result};
use crate::numeric::{log2_1p, pow2m1};
use crate::params::SystemParams;
use crate::solution::{Mode, ModeSolution};
use std::f64::consts::LN_2;

/// Absolute tolerance on time variables, s.
pub const TAU_TOL: f64 = 1e-12;
/// Relative bracket inset keeping the objective off its singular ends.
const BRACKET_EPS: f64 = 1e-9;
/// Margin below 1 required of the PS ratio.
const RHO_MARGIN: f64 = 1e-9;

/// Reduced time budget after removing the fixed fog-compute and
/// feedback slots from the block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffloadBudget {
    /// Time left for reception plus uplink, s.
    pub t_frak: f64,
    /// Pinned fog computing slot, s.
    pub tau_fogcpt: f64,
    /// Pinned result feedback slot, s.
    pub tau_fu: f64,
}

/// Solved offload operating point plus the clamp diagnostics the mode
/// selector's piecewise-energy check needs.
#[derive(Debug, Clone, PartialEq)]
pub struct OffloadOutcome {
    pub solution: ModeSolution,
    /// Transmit power the unconstrained stationary point would need, W.
    pub clamp_threshold: f64,
    /// True when that power exceeded the budget and the solution sits at
    /// maximum transmit power.
    pub clamped: bool,
}

/// Fixed slots and the remaining budget.
pub fn offload_budget(params: &SystemParams, g_fu: f64) -> Result<OffloadBudget> {
    if !(g_fu > 0.0) {
        return Err(Error::Domain("feedback gain must be positive".into()));
    }
    let tau_fogcpt = params.k_ops * params.r_th * params.t_b / params.f_fogop;
    let fu_rate = params.bandwidth * log2_1p(g_fu * params.p_fu_max / params.noise_f);
    let tau_fu = params.beta * params.r_th * params.t_b / fu_rate;
    let t_frak = params.t_b - tau_fogcpt - tau_fu;
    if t_frak <= 0.0 {
        return Err(InfeasibleReason::BudgetExhausted.into());
    }
    Ok(OffloadBudget {
        t_frak,
        tau_fogcpt,
        tau_fu,
    })
}

/// Shortest uplink slot that moves the block's bits at maximum power, s.
pub fn min_uplink_slot(params: &SystemParams, g_uf: f64) -> f64 {
    params.bits_per_block() / (params.bandwidth * log2_1p(g_uf * params.p_uf_max / params.noise_s))
}

/// Shortest reception slot that can decode the block's bits with the PS
/// ratio at its upper margin, s.
fn min_decode_slot(params: &SystemParams, g_ap_u: f64) -> f64 {
    params.bits_per_block()
        / (params.bandwidth * log2_1p((1.0 - RHO_MARGIN) * params.p_ap * g_ap_u / params.noise_n))
}

/// PS ratio that decodes exactly the threshold rate in a slot of
/// `tau_ipt` seconds.
pub fn rho_for_slot(params: &SystemParams, g_ap_u: f64, tau_ipt: f64) -> f64 {
    params.noise_n / (params.p_ap * g_ap_u)
        * pow2m1(params.bits_per_block() / (params.bandwidth * tau_ipt))
}

/// Transmit power that moves the block's bits in a slot of `tau_uf`
/// seconds.
pub fn power_for_slot(params: &SystemParams, g_uf: f64, tau_uf: f64) -> f64 {
    params.noise_s / g_uf * pow2m1(params.bits_per_block() / (params.bandwidth * tau_uf))
}

/// Whether the offload mode admits any operating point.
pub fn offload_feasible(
    params: &SystemParams,
    gains: &LinkGains,
    budget: &OffloadBudget,
) -> Feasibility {
    let tau_uf_min = min_uplink_slot(params, gains.g_uf);
    if tau_uf_min >= budget.t_frak {
        return Feasibility::Infeasible(InfeasibleReason::UplinkTooSlow);
    }
    // Largest reception slot the budget leaves; the PS ratio it induces
    // must stay strictly below 1.
    let tau_ipt_max = budget.t_frak - tau_uf_min;
    if rho_for_slot(params, gains.g_ap_u, tau_ipt_max) > 1.0 - RHO_MARGIN {
        return Feasibility::Infeasible(InfeasibleReason::ChannelTooWeak);
    }
    Feasibility::Feasible
}

/// Net required energy as a function of the reception slot, with the
/// rate constraints tight and the remaining budget spent on the uplink.
pub fn reduced_objective(
    params: &SystemParams,
    gains: &LinkGains,
    tau_ipt: f64,
    iota: f64,
    e_s: f64,
) -> Result<f64> {
    let budget = offload_budget(params, gains.g_fu)?;
    reduced_objective_with_budget(params, gains, &budget, tau_ipt, iota, e_s)
}

pub(crate) fn reduced_objective_with_budget(
    params: &SystemParams,
    gains: &LinkGains,
    budget: &OffloadBudget,
    tau_ipt: f64,
    iota: f64,
    e_s: f64,
) -> Result<f64> {
    if !(tau_ipt > 0.0 && tau_ipt < budget.t_frak) {
        return Err(Error::Domain(format!(
            "tau_ipt must lie strictly inside (0, {}), got {tau_ipt}",
            budget.t_frak
        )));
    }
    let bits_per_hz = params.bits_per_block() / params.bandwidth;
    let s = budget.t_frak - tau_ipt;
    let uplink = s * params.noise_s / gains.g_uf * pow2m1(bits_per_hz / s);
    let harvest = tau_ipt
        * params.eta
        * (params.p_ap * gains.g_ap_u - params.noise_n * pow2m1(bits_per_hz / tau_ipt));
    Ok(params.xi * params.bits_per_block() + uplink - harvest - iota - e_s)
}

/// Analytic derivative of [`reduced_objective`] with respect to the reception
/// slot.
pub fn reduced_objective_slope(
    params: &SystemParams,
    gains: &LinkGains,
    tau_ipt: f64,
) -> Result<f64> {
    let budget = offload_budget(params, gains.g_fu)?;
    reduced_objective_slope_with_budget(params, gains, &budget, tau_ipt)
}

pub(crate) fn reduced_objective_slope_with_budget(
    params: &SystemParams,
    gains: &LinkGains,
    budget: &OffloadBudget,
    tau_ipt: f64,
) -> Result<f64> {
    if !(tau_ipt > 0.0 && tau_ipt < budget.t_frak) {
        return Err(Error::Domain(format!(
            "tau_ipt must lie strictly inside (0, {}), got {tau_ipt}",
            budget.t_frak
        )));
    }
    let a = params.noise_s / gains.g_uf;
    let b = params.bits_per_block() / params.bandwidth;
    let c = params.eta * params.p_ap * gains.g_ap_u;
    let cd = params.eta * params.noise_n;
    let s = budget.t_frak - tau_ipt;
    let uplink_side = a * ((b / s).exp2() * (b * LN_2 / s - 1.0) + 1.0);
    let decode_side = cd * ((b / tau_ipt).exp2() * (1.0 - b * LN_2 / tau_ipt) - 1.0);
    Ok(uplink_side + decode_side - c)
}

/// Bisection on the derivative; assumes `f(lo) < 0 < f(hi)`.
fn bisect_root<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    bisect_root_traced(f, lo, hi, tol, &mut |_| {})
}

/// Same bisection, reporting the midpoint residual of every iteration.
fn bisect_root_traced<F: Fn(f64) -> f64>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    observe: &mut dyn FnMut(f64),
) -> f64 {
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        observe(fm.abs());
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exposes the bisection residual trace for convergence diagnostics:
/// returns (root, |slope| at each midpoint) on the unconstrained
/// bracket, or None when the slope has no interior sign change.
pub fn bisection_residual_trace(
    params: &SystemParams,
    gains: &LinkGains,
) -> Result<Option<(f64, Vec<f64>)>> {
    let budget = offload_budget(params, gains.g_fu)?;
    let t = budget.t_frak;
    let lo = (BRACKET_EPS * t).max(min_decode_slot(params, gains.g_ap_u));
    let hi = (1.0 - BRACKET_EPS) * t;
    if lo >= hi {
        return Ok(None);
    }
    let slope =
        |tau: f64| reduced_objective_slope_with_budget(params, gains, &budget, tau).unwrap();
    if slope(lo) >= 0.0 || slope(hi) <= 0.0 {
        return Ok(None);
    }
    let mut residuals = Vec::new();
    let root = bisect_root_traced(&slope, lo, hi, TAU_TOL * params.t_b, &mut |r| {
        residuals.push(r)
    });
    Ok(Some((root, residuals)))
}

/// Minimum-energy offload operating point.
pub fn solve_offload(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
) -> Result<OffloadOutcome> {
    let budget = offload_budget(params, gains.g_fu)?;
    if let Feasibility::Infeasible(r) = offload_feasible(params, gains, &budget) {
        return Err(r.into());
    }
    let t = budget.t_frak;
    let tau_uf_min = min_uplink_slot(params, gains.g_uf);
    let lo = (BRACKET_EPS * t).max(min_decode_slot(params, gains.g_ap_u));
    let hi_power = t - tau_uf_min; // uplink power budget caps the slot here
    let hi_free = (1.0 - BRACKET_EPS) * t;

    let slope =
        |tau: f64| reduced_objective_slope_with_budget(params, gains, &budget, tau).unwrap();
    let tol = TAU_TOL * params.t_b;

    // Stationary point ignoring the power cap; its implied transmit
    // power is the clamp threshold of the piecewise energy expression.
    let unconstrained = if lo >= hi_free || slope(lo) >= 0.0 {
        lo
    } else if slope(hi_free) <= 0.0 {
        hi_free
    } else {
        bisect_root(&slope, lo, hi_free, tol)
    };
    let clamp_threshold = power_for_slot(params, gains.g_uf, t - unconstrained);

    let clamped = clamp_threshold > params.p_uf_max;
    let tau_ipt = if clamped {
        // Derivative still negative at the cap: sit at maximum power.
        hi_power.min(hi_free)
    } else {
        unconstrained
    };

    let tau_uf = t - tau_ipt;
    let p_uf = power_for_slot(params, gains.g_uf, tau_uf).min(params.p_uf_max);
    let rho = rho_for_slot(params, gains.g_ap_u, tau_ipt);
    if rho > 1.0 - RHO_MARGIN {
        return Err(InfeasibleReason::ChannelTooWeak.into());
    }

    let bits = params.bits_per_block();
    let e_id = params.xi * bits;
    let e_uf = p_uf * tau_uf;
    let e_eh = params.eta * (1.0 - rho) * params.p_ap * gains.g_ap_u * tau_ipt + iota;
    let e_u = e_id + e_uf - e_eh - e_s;

    Ok(OffloadOutcome {
        solution: ModeSolution {
            mode: Mode::Offload,
            tau_ipt,
            tau_cpt: 0.0,
            tau_uf,
            tau_fogcpt: budget.tau_fogcpt,
            tau_fu: budget.tau_fu,
            rho,
            p_uf,
            e_id,
            e_cpt: 0.0,
            e_uf,
            e_eh,
            e_u,
        },
        clamp_threshold,
        clamped,
    })
}
