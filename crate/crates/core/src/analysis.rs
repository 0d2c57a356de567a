//! Deployment and threshold analytics: the maximum tolerable path loss,
//! the task-complexity threshold at which offloading starts to pay, and
//! the result-scaling threshold at which it stops. Each closed form is
//! cross-checked against an independent energy-balance root finder.

use std::f64::consts::{E, LN_2};

use crate::channel::LinkGains;
use crate::error::{Error, Result};
use crate::local::solve_local;
use crate::numeric::{log2_1p, pow2m1};
use crate::offload::{min_uplink_slot, offload_budget, solve_offload};
use crate::params::SystemParams;

/// Which real branch of the Lambert W function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambertBranch {
    Principal,
    Lower,
}

/// A threshold value together with its independent cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    /// Closed-form value (ops/bit for the complexity threshold, plain
    /// ratio for the scaling threshold, dB for the path-loss bound).
    pub value: f64,
    /// Lambert branch the closed form used, when one was involved.
    pub branch_used: Option<LambertBranch>,
    /// Root-finder value of the same quantity.
    pub oracle_value: f64,
    /// |value - oracle| / |value| (0 when both are infinite).
    pub rel_gap: f64,
}

const W_RESIDUAL: f64 = 1e-12;

/// Real Lambert W: the inverse of `w -> w e^w` on the requested branch.
///
/// Principal branch accepts `x >= -1/e`; the lower branch accepts
/// `-1/e <= x < 0`. Halley iteration from a branch-appropriate start.
pub fn lambert_w(x: f64, branch: LambertBranch) -> Result<f64> {
    let min_x = -1.0 / E;
    if !x.is_finite() {
        return Err(Error::Domain(format!("lambert_w argument {x} not finite")));
    }
    if x < min_x - 1e-300 {
        // Tolerate roundoff exactly at the branch point.
        if (x - min_x).abs() > 1e-16 {
            return Err(Error::Domain(format!("lambert_w argument {x} below -1/e")));
        }
    }
    match branch {
        LambertBranch::Principal => {
            if x == 0.0 {
                return Ok(0.0);
            }
            if (x - min_x).abs() < 1e-16 {
                return Ok(-1.0);
            }
            let w0 = if x > E {
                let l = x.ln();
                l - l.ln()
            } else if x > 0.0 {
                // Crude but inside the convergence basin.
                x / (1.0 + x)
            } else {
                // Branch-point expansion, positive root side.
                let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
                -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
            };
            halley(x, w0)
        }
        LambertBranch::Lower => {
            if !(x < 0.0) {
                return Err(Error::Domain(format!(
                    "lower branch needs x in [-1/e, 0), got {x}"
                )));
            }
            if (x - min_x).abs() < 1e-16 {
                return Ok(-1.0);
            }
            let w0 = if x < -0.2 {
                let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
                -1.0 - p - p * p / 3.0 - 11.0 * p * p * p / 72.0
            } else {
                // w ~ ln(-x) - ln(-ln(-x)) as x -> 0-.
                let l1 = (-x).ln();
                l1 - (-l1).ln()
            };
            halley(x, w0)
        }
    }
}

fn halley(x: f64, mut w: f64) -> Result<f64> {
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= W_RESIDUAL * x.abs().max(1.0) {
            return Ok(w);
        }
        let df = ew * (w + 1.0);
        let step = f / (df - f * (w + 2.0) / (2.0 * (w + 1.0)));
        let next = w - step;
        if !next.is_finite() {
            break;
        }
        if (next - w).abs() <= f64::EPSILON * w.abs() {
            w = next;
            break;
        }
        w = next;
    }
    let resid = w * w.exp() - x;
    if resid.abs() <= 1e-9 * x.abs().max(1.0) {
        Ok(w)
    } else {
        Err(Error::RootFind(format!(
            "lambert_w failed to converge for x = {x} (residual {resid:e})"
        )))
    }
}

/// Principal-branch W for huge arguments given as `ln(x)`, solving
/// `w + ln w = ln x` by Newton. Needed when `x` itself overflows f64.
fn lambert_w0_from_ln(ln_x: f64) -> f64 {
    let mut w = if ln_x > 1.0 {
        ln_x - ln_x.ln()
    } else {
        ln_x.exp() // small argument, W ~ x
    };
    for _ in 0..80 {
        if w <= 0.0 {
            w = 1e-300;
        }
        let f = w + w.ln() - ln_x;
        let df = 1.0 + 1.0 / w;
        let next = w - f / df;
        if !next.is_finite() || (next - w).abs() <= 1e-15 * w.abs() {
            w = next.max(1e-300);
            break;
        }
        w = next;
    }
    w
}

fn rel_gap_of(a: f64, b: f64) -> f64 {
    if a.is_infinite() && b.is_infinite() {
        0.0
    } else {
        (a - b).abs() / a.abs().max(f64::MIN_POSITIVE)
    }
}

// ---------------------------------------------------------------------
// Maximum tolerable path loss
// ---------------------------------------------------------------------

/// Smallest effective downlink gain at which the local mode's energy
/// balance closes, or None when any gain suffices.
fn local_gain_limit(params: &SystemParams, iota: f64, e_s: f64) -> Result<f64> {
    if params.f_op <= params.k_ops * params.r_th {
        return Err(Error::Domain(
            "local branch undefined: compute too slow for the rate".into(),
        ));
    }
    let bits = params.bits_per_block();
    let tau = params.t_b * (params.f_op - params.k_ops * params.r_th) / params.f_op;
    let c_fac = pow2m1(
        params.r_th * params.f_op / (params.bandwidth * (params.f_op - params.k_ops * params.r_th)),
    );
    let need = (params.xi + params.k_ops * params.energy_per_op()) * bits - iota - e_s;
    if need <= 0.0 {
        return Ok(0.0); // stored energy alone covers the block
    }
    Ok((need / (params.eta * tau) + params.noise_n * c_fac) / params.p_ap)
}

/// Same balance for the offload mode anchored at maximum transmit power.
fn offload_gain_limit(
    params: &SystemParams,
    g_uf: f64,
    g_fu: f64,
    iota: f64,
    e_s: f64,
) -> Result<f64> {
    let budget = offload_budget(params, g_fu)?;
    let tau_uf_min = min_uplink_slot(params, g_uf);
    let slot = budget.t_frak - tau_uf_min;
    if slot <= 0.0 {
        return Err(Error::Domain(
            "offload branch undefined: uplink exhausts the block".into(),
        ));
    }
    let bits = params.bits_per_block();
    let f_rate = params.bandwidth * log2_1p(g_uf * params.p_uf_max / params.noise_s);
    let d_fac = pow2m1(bits / (params.bandwidth * slot));
    let need = (params.p_uf_max / f_rate + params.xi) * bits - iota - e_s;
    if need <= 0.0 {
        return Ok(0.0);
    }
    Ok((need / (params.eta * slot) + params.noise_n * d_fac) / params.p_ap)
}

fn gain_limit_to_db(g: f64) -> f64 {
    if g <= 0.0 {
        f64::INFINITY
    } else {
        -10.0 * g.log10()
    }
}

/// Oracle: bisect the same energy balance on the loss axis.
fn bisect_balance(need: f64, eta_slot: f64, p_ap: f64, noise_term: f64) -> f64 {
    // f(L) = need - eta_slot * (p_ap * 10^(-L/10) - noise_term), increasing in L.
    if need <= 0.0 {
        return f64::INFINITY;
    }
    let f = |l_db: f64| need - eta_slot * (p_ap * 10f64.powf(-l_db / 10.0) - noise_term);
    let (mut lo, mut hi) = (-100.0, 400.0);
    if f(lo) > 0.0 || f(hi) < 0.0 {
        return f64::INFINITY;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximum path loss (dB of the effective downlink gain) at which the
/// cheaper of the two modes still closes its energy balance.
pub fn max_path_loss(
    params: &SystemParams,
    g_uf: f64,
    g_fu: f64,
    iota: f64,
    e_s: f64,
) -> Result<ThresholdReport> {
    let local = local_gain_limit(params, iota, e_s);
    let offload = offload_gain_limit(params, g_uf, g_fu, iota, e_s);
    if local.is_err() && offload.is_err() {
        return Err(Error::Domain("both branches undefined".into()));
    }
    let l_local = local
        .clone()
        .map(gain_limit_to_db)
        .unwrap_or(f64::NEG_INFINITY);
    let l_off = offload
        .clone()
        .map(gain_limit_to_db)
        .unwrap_or(f64::NEG_INFINITY);
    let value = l_local.max(l_off);

    // Oracle rerun of the winning branch.
    let bits = params.bits_per_block();
    let oracle_value = if l_local >= l_off {
        let tau = params.t_b * (params.f_op - params.k_ops * params.r_th) / params.f_op;
        let c_fac = pow2m1(
            params.r_th * params.f_op
                / (params.bandwidth * (params.f_op - params.k_ops * params.r_th)),
        );
        let need = (params.xi + params.k_ops * params.energy_per_op()) * bits - iota - e_s;
        bisect_balance(need, params.eta * tau, params.p_ap, params.noise_n * c_fac)
    } else {
        let budget = offload_budget(params, g_fu)?;
        let slot = budget.t_frak - min_uplink_slot(params, g_uf);
        let f_rate = params.bandwidth * log2_1p(g_uf * params.p_uf_max / params.noise_s);
        let d_fac = pow2m1(bits / (params.bandwidth * slot));
        let need = (params.p_uf_max / f_rate + params.xi) * bits - iota - e_s;
        bisect_balance(need, params.eta * slot, params.p_ap, params.noise_n * d_fac)
    };

    // Compare on the linear gain where both are finite.
    let rel_gap = if value.is_infinite() && oracle_value.is_infinite() {
        0.0
    } else {
        rel_gap_of(gain_from_loss(value), gain_from_loss(oracle_value))
    };
    Ok(ThresholdReport {
        value,
        branch_used: None,
        oracle_value,
        rel_gap,
    })
}

fn gain_from_loss(l_db: f64) -> f64 {
    if l_db.is_infinite() {
        0.0
    } else {
        10f64.powf(-l_db / 10.0)
    }
}

/// High-SNR simplification: the receiver-noise corrections drop out.
pub fn max_path_loss_high_snr(
    params: &SystemParams,
    g_uf: f64,
    g_fu: f64,
    iota: f64,
    e_s: f64,
) -> Result<ThresholdReport> {
    if params.f_op <= params.k_ops * params.r_th {
        return Err(Error::Domain(
            "requires the compute rate to exceed the task rate".into(),
        ));
    }
    let mut quiet = params.clone();
    quiet.noise_n = f64::MIN_POSITIVE;
    max_path_loss(&quiet, g_uf, g_fu, iota, e_s)
}

// ---------------------------------------------------------------------
// Complexity threshold K0
// ---------------------------------------------------------------------

/// Relative residual accepted when validating a closed-form candidate
/// against the energies it is supposed to equate.
const CANDIDATE_TOL: f64 = 1e-6;

fn local_energy_at_k(
    params: &SystemParams,
    g_ap_u: f64,
    iota: f64,
    e_s: f64,
    k: f64,
) -> Result<f64> {
    let mut p = params.clone();
    p.k_ops = k;
    Ok(solve_local(&p, g_ap_u, iota, e_s)?.e_u)
}

fn offload_energy_at_k(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
    k: f64,
) -> Result<f64> {
    let mut p = params.clone();
    p.k_ops = k;
    Ok(solve_offload(&p, gains, iota, e_s)?.solution.e_u)
}

/// Closed-form root of `E_local(K) = e_off` through Lambert W.
///
/// Writing `x = f_op - K r_th`, the balance collapses to
/// `V - U x + W0 x e^(k/x) = 0`, whose solution is
/// `1/x = U/V - W((k W0 / V) e^(k U / V)) / k`.
fn k_root_lambert(
    params: &SystemParams,
    g_ap_u: f64,
    iota: f64,
    e_s: f64,
    e_off: f64,
) -> Result<(f64, LambertBranch)> {
    let a_op = params.energy_per_op();
    let g_big = params.p_ap * g_ap_u;
    let u_coef = a_op * params.f_op + params.eta * (g_big + params.noise_n);
    let v_coef = a_op * params.f_op * params.f_op + params.xi * params.r_th * params.f_op
        - (iota + e_s + e_off) * params.f_op / params.t_b;
    let w0_coef = params.eta * params.noise_n;
    let k_coef = LN_2 * params.r_th * params.f_op / params.bandwidth;

    let k_max = params.f_op / params.r_th;
    let check = |x: f64| -> Option<f64> {
        if !(x > 0.0 && x < params.f_op) {
            return None;
        }
        let k = (params.f_op - x) / params.r_th;
        if !(k > 0.0 && k < k_max) {
            return None;
        }
        let e_loc = local_energy_at_k(params, g_ap_u, iota, e_s, k).ok()?;
        let scale = e_loc.abs().max(e_off.abs()).max(1e-300);
        ((e_loc - e_off).abs() <= CANDIDATE_TOL * scale).then_some(k)
    };

    if v_coef == 0.0 {
        // Degenerate: e^(k/x) = U/W0 directly.
        let x = k_coef / (u_coef / w0_coef).ln();
        return check(x)
            .map(|k| (k, LambertBranch::Principal))
            .ok_or_else(|| {
                Error::RootFind("degenerate complexity balance has no valid root".into())
            });
    }

    let ln_mag = (k_coef * w0_coef / v_coef.abs()).ln() + k_coef * u_coef / v_coef;
    let mut candidates: Vec<(f64, LambertBranch)> = Vec::new();
    if v_coef > 0.0 {
        // Positive argument: principal branch only. Guard overflow by
        // working from the logarithm when needed.
        let w = if ln_mag > 700.0 {
            lambert_w0_from_ln(ln_mag)
        } else {
            lambert_w(ln_mag.exp(), LambertBranch::Principal)?
        };
        candidates.push((w, LambertBranch::Principal));
    } else {
        let arg = -ln_mag.exp();
        for branch in [LambertBranch::Principal, LambertBranch::Lower] {
            if let Ok(w) = lambert_w(arg, branch) {
                candidates.push((w, branch));
            }
        }
    }
    for (w, branch) in candidates {
        let inv_x = u_coef / v_coef - w / k_coef;
        if inv_x > 0.0 {
            if let Some(k) = check(1.0 / inv_x) {
                return Ok((k, branch));
            }
        }
    }
    Err(Error::RootFind(
        "no Lambert branch yields a complexity root inside the feasible range".into(),
    ))
}

fn bisect_k_crossover(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
) -> Result<f64> {
    let k_lo = 1.0;
    let k_hi = params.f_op / params.r_th - 1.0;
    // Only a sign change between two finite energy differences counts:
    // a mode dying of infeasibility is not an energy crossover. The
    // jointly feasible K region is an interval, so a linear scan finds
    // any finite-to-finite bracket.
    let delta = |k: f64| -> Option<f64> {
        let loc = local_energy_at_k(params, gains.g_ap_u, iota, e_s, k).ok()?;
        let off = offload_energy_at_k(params, gains, iota, e_s, k).ok()?;
        Some(loc - off)
    };
    let n = 129;
    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..n {
        let k = k_lo + (k_hi - k_lo) * i as f64 / (n - 1) as f64;
        let cur = delta(k);
        if let (Some((pk, pd)), Some(cd)) = (prev, cur) {
            if pd == 0.0 {
                return Ok(pk);
            }
            if pd.signum() != cd.signum() {
                bracket = Some((pk, k, pd));
                break;
            }
        }
        prev = cur.map(|d| (k, d));
    }
    let (mut lo, mut hi, mut d_lo) = bracket.ok_or_else(|| {
        Error::NoCrossover(format!(
            "complexity balance keeps one sign on the feasible part of [{k_lo}, {k_hi}]"
        ))
    })?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        // Between two feasible points everything is feasible.
        let d_mid = delta(mid).expect("feasible K region is an interval");
        if d_mid.signum() == d_lo.signum() {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-10 * hi.max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Task-complexity threshold at which the two modes cost the same.
///
/// Requires the fog processor fast enough that its compute slot is
/// negligible at the returned threshold (checked after solving).
pub fn k_threshold(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
) -> Result<ThresholdReport> {
    // Independent closed-form route: the offload energy is treated as
    // constant in K, self-anchored and refined so the residual coupling
    // through the fog compute slot stays below the validation tolerance.
    // A refinement that exhausts the fog budget voids that assumption.
    let formula = (|| -> Result<(f64, LambertBranch)> {
        let mut e_off = offload_energy_at_k(params, gains, iota, e_s, params.k_ops)?;
        let mut root = k_root_lambert(params, gains.g_ap_u, iota, e_s, e_off)?;
        for _ in 0..2 {
            match offload_energy_at_k(params, gains, iota, e_s, root.0) {
                Ok(e) => {
                    e_off = e;
                    root = k_root_lambert(params, gains.g_ap_u, iota, e_s, e_off)?;
                }
                Err(_) => break, // rejected by the capacity check below
            }
        }
        Ok(root)
    })();
    // The existence of a genuine crossover is the oracle's call.
    let oracle_value = bisect_k_crossover(params, gains, iota, e_s)?;
    let (k0, branch) = formula?;
    if k0 * params.r_th > 1e-2 * params.f_fogop {
        return Err(Error::Domain(format!(
            "fog capacity precondition violated: K0 r_th = {:e} not far below f_fogop = {:e}",
            k0 * params.r_th,
            params.f_fogop
        )));
    }
    Ok(ThresholdReport {
        value: k0,
        branch_used: Some(branch),
        oracle_value,
        rel_gap: rel_gap_of(k0, oracle_value),
    })
}

// ---------------------------------------------------------------------
// Result-scaling threshold beta0
// ---------------------------------------------------------------------

fn offload_energy_at_beta(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
    beta: f64,
) -> Result<f64> {
    let mut p = params.clone();
    p.beta = beta;
    Ok(solve_offload(&p, gains, iota, e_s)?.solution.e_u)
}

/// Closed-form scaling threshold assuming the crossover happens with the
/// transmit power clamped at its maximum; validated and reported against
/// the oracle either way.
fn beta_root_lambert(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
    e_loc: f64,
) -> Result<(f64, LambertBranch)> {
    let bits = params.bits_per_block();
    let g_big = params.p_ap * gains.g_ap_u;
    let f_rate = params.bandwidth * log2_1p(gains.g_uf * params.p_uf_max / params.noise_s);
    let tau_uf_min = bits / f_rate;
    let fu_rate = params.bandwidth * log2_1p(gains.g_fu * params.p_fu_max / params.noise_f);
    // Time left for reception once the fixed slots and the clamped
    // uplink are paid, before the feedback slot is charged.
    let s_avail = params.t_b - params.k_ops * bits / params.f_fogop - tau_uf_min;
    if s_avail <= 0.0 {
        return Err(Error::RootFind("no room for a clamped crossover".into()));
    }
    // Balance: eta*sn*e^(k' u) = eta*(G+sn) + I u with u = 1/tau_ipt.
    let i_coef = e_loc - params.xi * bits + iota + e_s - params.p_uf_max * tau_uf_min;
    let k_coef = LN_2 * bits / params.bandwidth;
    let lin = params.eta * (g_big + params.noise_n);
    let w0_coef = params.eta * params.noise_n;
    if i_coef == 0.0 {
        return Err(Error::RootFind("degenerate scaling balance".into()));
    }
    let arg = -(k_coef * w0_coef / i_coef) * (-k_coef * lin / i_coef).exp();
    let mut out: Option<(f64, LambertBranch)> = None;
    for branch in [LambertBranch::Principal, LambertBranch::Lower] {
        let w = match lambert_w(arg, branch) {
            Ok(w) => w,
            Err(_) => continue,
        };
        let z = -(i_coef / k_coef) * w;
        let u = (z - lin) / i_coef;
        if !(u > 0.0) {
            continue;
        }
        let tau = 1.0 / u;
        if !(tau > 0.0 && tau < s_avail) {
            continue;
        }
        let beta = (s_avail - tau) * fu_rate / bits;
        if !(beta > 0.0) {
            continue;
        }
        // Accept only if the full solver confirms both the energy match
        // and that the crossover really is clamped.
        if let Ok(out_sol) = {
            let mut p = params.clone();
            p.beta = beta;
            solve_offload(&p, gains, iota, e_s)
        } {
            let scale = e_loc.abs().max(out_sol.solution.e_u.abs()).max(1e-300);
            if out_sol.clamped && (out_sol.solution.e_u - e_loc).abs() <= CANDIDATE_TOL * scale {
                out = Some((beta, branch));
                break;
            }
        }
    }
    out.ok_or_else(|| Error::RootFind("no clamped-regime scaling root".into()))
}

/// First-order envelope estimate for an unclamped crossover: the optimal
/// offload energy responds to the budget through the uplink term only.
fn beta_root_envelope(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
    e_loc: f64,
) -> Result<f64> {
    let bits = params.bits_per_block();
    let out = solve_offload(params, gains, iota, e_s)?;
    let sol = &out.solution;
    let b = bits / params.bandwidth;
    let a = params.noise_s / gains.g_uf;
    let s = sol.tau_uf;
    let de_dt = a * ((b / s).exp2() * (1.0 - b * LN_2 / s) - 1.0); // dE*/d(budget) < 0
    let fu_rate = params.bandwidth * log2_1p(gains.g_fu * params.p_fu_max / params.noise_f);
    let de_dbeta = -de_dt * bits / fu_rate;
    if !(de_dbeta > 0.0) {
        return Err(Error::RootFind(
            "offload energy not increasing in beta".into(),
        ));
    }
    Ok(params.beta + (e_loc - sol.e_u) / de_dbeta)
}

fn bisect_beta_crossover(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
    e_loc: f64,
) -> Result<f64> {
    // Log-spaced scan, then bisection on the first bracketing pair of
    // finite energy differences. Offload turning infeasible at large
    // beta is a feasibility edge, not an energy crossover.
    let delta = |beta: f64| -> Option<f64> {
        offload_energy_at_beta(params, gains, iota, e_s, beta)
            .ok()
            .map(|e| e - e_loc)
    };
    let n = 81;
    let (lg_lo, lg_hi) = (-4.0f64, 4.0f64);
    let mut prev: Option<(f64, f64)> = None;
    let mut bracket = None;
    for i in 0..n {
        let beta = 10f64.powf(lg_lo + (lg_hi - lg_lo) * i as f64 / (n - 1) as f64);
        let cur = delta(beta);
        if let (Some((pb, pd)), Some(cd)) = (prev, cur) {
            if pd == 0.0 {
                return Ok(pb);
            }
            if pd.signum() != cd.signum() {
                bracket = Some((pb, beta, pd));
                break;
            }
        }
        prev = cur.map(|d| (beta, d));
    }
    let (mut lo, mut hi, mut d_lo) = bracket.ok_or_else(|| {
        Error::NoCrossover("no finite sign change on the beta scan".into())
    })?;
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        let d_mid = delta(mid).expect("feasible beta region is an interval");
        if d_mid.signum() == d_lo.signum() {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
        if hi / lo <= 1.0 + 1e-10 {
            break;
        }
    }
    Ok((lo * hi).sqrt())
}

/// Result-scaling threshold at which the two modes cost the same.
pub fn beta_threshold(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
) -> Result<ThresholdReport> {
    let e_loc = solve_local(params, gains.g_ap_u, iota, e_s)?.e_u;
    let oracle_value = bisect_beta_crossover(params, gains, iota, e_s, e_loc)?;
    let (value, branch_used) = match beta_root_lambert(params, gains, iota, e_s, e_loc) {
        Ok((b, br)) => (b, Some(br)),
        Err(_) => (beta_root_envelope(params, gains, iota, e_s, e_loc)?, None),
    };
    Ok(ThresholdReport {
        value,
        branch_used,
        oracle_value,
        rel_gap: rel_gap_of(value, oracle_value),
    })
}
