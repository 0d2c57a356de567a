//! Per-block mode decision: run both single-mode solvers and keep the
//! cheaper operating point, local winning ties.

use crate::channel::LinkGains;
use crate::error::{Error, Result};
use crate::local::solve_local;
use crate::offload::solve_offload;
use crate::params::SystemParams;
use crate::solution::ModeSolution;

/// Minimum-energy operating point across both modes.
///
/// Errors with [`Error::BothModesInfeasible`] when neither mode admits a
/// solution; the frame simulator falls back to harvest-only in that case.
pub fn select_mode(
    params: &SystemParams,
    gains: &LinkGains,
    iota: f64,
    e_s: f64,
) -> Result<ModeSolution> {
    let local = solve_local(params, gains.g_ap_u, iota, e_s);
    let offload = solve_offload(params, gains, iota, e_s).map(|o| o.solution);
    match (local, offload) {
        (Ok(l), Ok(o)) => Ok(if l.e_u <= o.e_u { l } else { o }),
        (Ok(l), Err(_)) => Ok(l),
        (Err(_), Ok(o)) => Ok(o),
        (Err(el), Err(eo)) => {
            let unwrap = |e: Error| match e {
                Error::Infeasible(r) => r,
                other => panic!("solver returned non-feasibility error: {other}"),
            };
            Err(Error::BothModesInfeasible {
                local: unwrap(el),
                offload: unwrap(eo),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{gain_from_db, path_loss_db};
    use crate::solution::Mode;

    fn table() -> SystemParams {
        SystemParams::default()
    }

    fn gains_at(d_ap: f64, d_uf: f64, p: &SystemParams) -> LinkGains {
        let g_ap = gain_from_db(path_loss_db(d_ap, p.carrier_mhz, p.pl_coeff).unwrap());
        let g_uf = gain_from_db(path_loss_db(d_uf, p.carrier_mhz, p.pl_coeff).unwrap());
        LinkGains {
            g_ap_u: p.n_antennas as f64 * g_ap,
            g_uf,
            g_fu: g_uf,
        }
    }

    #[test]
    fn returns_only_feasible_candidate() {
        let mut p = table();
        let g = gains_at(10.0, 8.0, &p);
        // Starve the offload mode: feedback consumes the whole block.
        p.beta = 1e6;
        p.p_fu_max = 1e-9;
        let sol = select_mode(&p, &g, 0.0, 0.0).unwrap();
        assert_eq!(sol.mode, Mode::Local);
    }

    #[test]
    fn picks_argmin_and_breaks_ties_local() {
        let p = table();
        let g = gains_at(10.0, 8.0, &p);
        let l = solve_local(&p, g.g_ap_u, 0.0, 0.0).unwrap();
        let o = solve_offload(&p, &g, 0.0, 0.0).unwrap().solution;
        let picked = select_mode(&p, &g, 0.0, 0.0).unwrap();
        assert_eq!(picked.e_u, l.e_u.min(o.e_u));
        if (l.e_u - o.e_u).abs() == 0.0 {
            assert_eq!(picked.mode, Mode::Local);
        }
    }

    #[test]
    fn credit_shift_never_flips_mode() {
        let p = table();
        let g = gains_at(12.0, 9.0, &p);
        let base = select_mode(&p, &g, 0.0, 0.0).unwrap();
        for credit in [1e-8, 1e-6, 1e-4] {
            let shifted = select_mode(&p, &g, credit, 0.0).unwrap();
            assert_eq!(shifted.mode, base.mode);
            assert!((shifted.e_u - (base.e_u - credit)).abs() < 1e-15 + 1e-9 * credit);
        }
    }

    #[test]
    fn both_infeasible_reported() {
        let mut p = table();
        p.k_ops = 1e6; // local compute hopeless
        let mut g = gains_at(10.0, 8.0, &p);
        g.g_uf = 1e-25; // uplink hopeless
        match select_mode(&p, &g, 0.0, 0.0) {
            Err(Error::BothModesInfeasible { .. }) => {}
            other => panic!("expected both-infeasible, got {other:?}"),
        }
    }

    #[test]
    fn mode_flips_from_local_to_offload_as_k_grows() {
        // The compute-energy slope eventually hands the block to the fog
        // server; scan complexity and require exactly one flip.
        let p = table();
        let g = gains_at(10.0, 8.0, &p);
        let mut flips = 0;
        let mut prev: Option<Mode> = None;
        for i in 0..60 {
            let mut q = p.clone();
            q.k_ops = 10f64.powf(0.0 + 4.9 * i as f64 / 59.0);
            let m = select_mode(&q, &g, 0.0, 0.0).unwrap().mode;
            if let Some(pm) = prev {
                if pm != m {
                    flips += 1;
                    assert_eq!(pm, Mode::Local);
                    assert_eq!(m, Mode::Offload);
                }
            }
            prev = Some(m);
        }
        assert_eq!(flips, 1, "expected a single local->offload crossover");
    }
}
