//! Brute-force lattice searches over the raw constraint sets. These are
//! deliberately independent of the closed-form solvers: they price every
//! lattice point from the primitive rate and energy expressions and keep
//! the cheapest feasible one.

use crate::channel::LinkGains;
use crate::error::{Error, Result};
use crate::numeric::{log2_1p, pow2m1};
use crate::offload::offload_budget;
use crate::params::SystemParams;

/// Best feasible lattice point of a grid search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub tau_ipt: f64,
    /// PS ratio for the local search, transmit power for the offload one.
    pub second: f64,
    pub e_u: f64,
}

/// Exhaustive scan of (tau_ipt, rho) for the local mode.
///
/// Lattice points sit at interior multiples `i/n`, so the open-interval
/// bounds are never touched and an even refinement reuses every coarse
/// point (halving `n` never finds anything the doubled grid misses).
pub fn grid_search_local(
    params: &SystemParams,
    g_ap_u: f64,
    iota: f64,
    e_s: f64,
    n_grid: usize,
) -> Result<GridPoint> {
    assert!(n_grid >= 50, "lattice too coarse to mean anything");
    let bits_needed = params.bits_per_block();
    let c1 = params.xi + params.k_ops * params.energy_per_op();
    let snr_full = params.p_ap * g_ap_u / params.noise_n;
    let mut best: Option<GridPoint> = None;
    for i in 1..n_grid {
        let tau = params.t_b * i as f64 / n_grid as f64;
        for j in 1..n_grid {
            let rho = j as f64 / n_grid as f64;
            // Decoded bits over the block at this operating point.
            let bits = params.bandwidth * tau * log2_1p(rho * snr_full);
            if bits < bits_needed {
                continue; // rate constraint
            }
            // Enough compute time must remain for every decoded bit.
            if (params.t_b - tau) * params.f_op < params.k_ops * bits {
                continue;
            }
            let e_u =
                c1 * bits - params.eta * (1.0 - rho) * params.p_ap * g_ap_u * tau - iota - e_s;
            if best.map_or(true, |b| e_u < b.e_u) {
                best = Some(GridPoint {
                    tau_ipt: tau,
                    second: rho,
                    e_u,
                });
            }
        }
    }
    best.ok_or(Error::NoFeasiblePoint)
}

/// Exhaustive scan of (tau_ipt, P_uf) for the offload mode, with the
/// uplink slot pinned by the rate equality and the PS ratio by the
/// decode equality.
pub fn grid_search_offload(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
    n_grid: usize,
) -> Result<GridPoint> {
    assert!(n_grid >= 50, "lattice too coarse to mean anything");
    let budget = match offload_budget(params, gains.g_fu) {
        Ok(b) => b,
        Err(_) => return Err(Error::NoFeasiblePoint),
    };
    let bits_needed = params.bits_per_block();
    let mut best: Option<GridPoint> = None;
    for i in 1..n_grid {
        let tau = params.t_b * i as f64 / n_grid as f64;
        if tau >= budget.t_frak {
            break;
        }
        // Smallest PS ratio decoding the block's bits in this slot.
        let rho = params.noise_n / (params.p_ap * gains.g_ap_u)
            * pow2m1(bits_needed / (params.bandwidth * tau));
        if rho >= 1.0 {
            continue;
        }
        let harvest = params.eta * (1.0 - rho) * params.p_ap * gains.g_ap_u * tau;
        for j in 1..=n_grid {
            let p_uf = params.p_uf_max * j as f64 / n_grid as f64;
            // Uplink slot that moves the bits at this power.
            let tau_uf =
                bits_needed / (params.bandwidth * log2_1p(p_uf * gains.g_uf / params.noise_s));
            if tau + tau_uf > budget.t_frak {
                continue;
            }
            let e_u = params.xi * bits_needed + p_uf * tau_uf - harvest - iota - e_s;
            if best.map_or(true, |b| e_u < b.e_u) {
                best = Some(GridPoint {
                    tau_ipt: tau,
                    second: p_uf,
                    e_u,
                });
            }
        }
    }
    best.ok_or(Error::NoFeasiblePoint)
}
