//! The nine experiment scenarios. Each returns a summary for direct
//! consumption by tests and writes `{csv, columns.txt, manifest.json}`
//! into the output directory.

use std::time::Instant;

use rayon::prelude::*;
use swipt_fog_core::{
    exhaustive_schedule, gen_channel, greedy_schedule, perturb_csi, random_schedule, select_mode,
    solve_local, solve_offload, stream, Geometry, LinkGains, Mode, StreamTag, SystemParams,
};

use crate::output::{write_columns, write_csv, write_manifest};
use crate::{RunOptions, Scenario};

pub type ScenarioResult<T> = Result<T, String>;

/// Mean mode energies at fixed link distances, averaged over fading
/// realizations (block index = realization index).
fn mean_mode_energies(
    params: &SystemParams,
    d_ap: f64,
    d_uf: f64,
    realizations: usize,
    seed: u64,
) -> (f64, f64, usize, usize) {
    let geo = Geometry::collinear(d_ap, d_uf, 1).expect("sweep distances above the model floor");
    let results: Vec<(f64, f64, bool, bool)> = (0..realizations)
        .into_par_iter()
        .map(|r| {
            let ch = gen_channel(params, &geo, 0, r as u64, seed).expect("valid geometry");
            let l = solve_local(params, ch.g_ap_u, 0.0, 0.0);
            let o = solve_offload(params, &ch.gains(), 0.0, 0.0);
            (
                l.as_ref().map(|s| s.e_u).unwrap_or(0.0),
                o.as_ref().map(|s| s.solution.e_u).unwrap_or(0.0),
                l.is_ok(),
                o.is_ok(),
            )
        })
        .collect();
    let nl = results.iter().filter(|r| r.2).count();
    let no = results.iter().filter(|r| r.3).count();
    let sl: f64 = results.iter().filter(|r| r.2).map(|r| r.0).sum();
    let so: f64 = results.iter().filter(|r| r.3).map(|r| r.1).sum();
    (
        if nl > 0 { sl / nl as f64 } else { f64::NAN },
        if no > 0 { so / no as f64 } else { f64::NAN },
        nl,
        no,
    )
}

/// Sign changes of `delta` along `x`, linearly interpolated (in log-x
/// when `log_axis` is set).
fn crossovers(points: &[(f64, f64)], log_axis: bool) -> Vec<f64> {
    let mut out = Vec::new();
    for w in points.windows(2) {
        let (x0, d0) = w[0];
        let (x1, d1) = w[1];
        if !d0.is_finite() || !d1.is_finite() {
            continue;
        }
        if d0 == 0.0 {
            out.push(x0);
            continue;
        }
        if d0.signum() != d1.signum() {
            let t = d0.abs() / (d0.abs() + d1.abs());
            if log_axis {
                out.push(10f64.powf(x0.log10() + t * (x1.log10() - x0.log10())));
            } else {
                out.push(x0 + t * (x1 - x0));
            }
        }
    }
    out
}

/// One sweep point: the abscissa, both mean energies, and feasibility
/// counts.
#[derive(Debug, Clone, Copy)]
pub struct SweepPoint {
    pub x: f64,
    pub mean_local: f64,
    pub mean_offload: f64,
    pub n_local: usize,
    pub n_offload: usize,
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub points: Vec<SweepPoint>,
    /// Abscissas where the mode preference flips.
    pub crossovers: Vec<f64>,
}

fn run_sweep(
    opts: &RunOptions,
    scenario: Scenario,
    xs: &[f64],
    log_axis: bool,
    eval: impl Fn(&SystemParams, f64) -> (f64, f64, usize, usize) + Sync,
    columns: &str,
) -> ScenarioResult<SweepSummary> {
    let started = Instant::now();
    let points: Vec<SweepPoint> = xs
        .iter()
        .map(|&x| {
            let (ml, mo, nl, no) = eval(&opts.config.params, x);
            SweepPoint {
                x,
                mean_local: ml,
                mean_offload: mo,
                n_local: nl,
                n_offload: no,
            }
        })
        .collect();
    let deltas: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.x, p.mean_local - p.mean_offload))
        .collect();
    let summary = SweepSummary {
        crossovers: crossovers(&deltas, log_axis),
        points,
    };
    let name = scenario.name();
    let rows: Vec<Vec<f64>> = summary
        .points
        .iter()
        .map(|p| {
            vec![
                p.x,
                p.mean_local,
                p.mean_offload,
                p.n_local as f64,
                p.n_offload as f64,
            ]
        })
        .collect();
    let header = "x,mean_e_u_local,mean_e_u_offload,n_feasible_local,n_feasible_offload";
    write_csv(&opts.out_dir, name, header, &rows).map_err(|e| e.to_string())?;
    write_columns(&opts.out_dir, name, columns).map_err(|e| e.to_string())?;
    write_manifest(&opts.out_dir, name, opts, started.elapsed()).map_err(|e| e.to_string())?;
    Ok(summary)
}

/// Task-complexity sweep at d_ap_u = 10 m, d_u_f = 8 m.
pub fn run_sweep_k(opts: &RunOptions) -> ScenarioResult<SweepSummary> {
    let xs: Vec<f64> = (0..=60)
        .map(|i| 10f64.powf(2.0 + 3.0 * i as f64 / 60.0))
        .collect();
    run_sweep(
        opts,
        Scenario::SweepK,
        &xs,
        true,
        |base, k| {
            let mut p = base.clone();
            p.k_ops = k;
            mean_mode_energies(&p, 10.0, 8.0, opts.realizations, opts.seed)
        },
        "x: task complexity, logic operations per bit (log-spaced 1e2..1e5)\n\
         mean_e_u_local: mean net required energy of the local mode, J (feasible draws only)\n\
         mean_e_u_offload: mean net required energy of the offload mode, J (feasible draws only)\n\
         n_feasible_local, n_feasible_offload: feasible draw counts out of the realization budget\n\
         geometry: user 10 m from the access point, server 8 m further on the same line\n",
    )
}

/// Access-point distance sweep with the server fixed 8 m from the user.
pub fn run_sweep_dist(opts: &RunOptions) -> ScenarioResult<SweepSummary> {
    let xs: Vec<f64> = (0..=58).map(|i| 1.0 + 29.0 * i as f64 / 58.0).collect();
    run_sweep(
        opts,
        Scenario::SweepDist,
        &xs,
        false,
        |base, d| mean_mode_energies(base, d, 8.0, opts.realizations, opts.seed),
        "x: access-point to user distance, m (server fixed 8 m from the user)\n\
         mean_e_u_local / mean_e_u_offload: mean net required energy per mode, J\n\
         n_feasible_local / n_feasible_offload: feasible draw counts\n",
    )
}

/// User sliding along the segment between access point and server.
pub fn run_line_placement(opts: &RunOptions) -> ScenarioResult<SweepSummary> {
    let g = &opts.config.geometry;
    let span = ((g.fs_pos[0] - g.hap_pos[0]).powi(2) + (g.fs_pos[1] - g.hap_pos[1]).powi(2)).sqrt();
    let xs: Vec<f64> = (0..=76)
        .map(|i| 0.5 + (span - 1.0) * i as f64 / 76.0)
        .collect();
    run_sweep(
        opts,
        Scenario::LinePlacement,
        &xs,
        false,
        |base, d| mean_mode_energies(base, d, span - d, opts.realizations, opts.seed),
        "x: access-point to user distance along the AP-server segment, m\n\
         (server distance is segment length minus x)\n\
         mean_e_u_local / mean_e_u_offload: mean net required energy per mode, J\n\
         n_feasible_local / n_feasible_offload: feasible draw counts\n",
    )
}

/// Result-scaling sweep at d_ap_u = 10 m, d_u_f = 8 m.
pub fn run_sweep_beta(opts: &RunOptions) -> ScenarioResult<SweepSummary> {
    let xs: Vec<f64> = (0..=60)
        .map(|i| 10f64.powf(-2.0 + 6.0 * i as f64 / 60.0))
        .collect();
    run_sweep(
        opts,
        Scenario::SweepBeta,
        &xs,
        true,
        |base, beta| {
            let mut p = base.clone();
            p.beta = beta;
            mean_mode_energies(&p, 10.0, 8.0, opts.realizations, opts.seed)
        },
        "x: task-result scaling factor (output bits per input bit, log-spaced 1e-2..1e4)\n\
         mean_e_u_local / mean_e_u_offload: mean net required energy per mode, J\n\
         n_feasible_local / n_feasible_offload: feasible draw counts\n",
    )
}

/// Per-cell outcome of a placement map.
#[derive(Debug, Clone, Copy)]
pub struct GridCell {
    pub x: f64,
    pub y: f64,
    /// 0 local, 1 offload, 2 infeasible (majority over realizations).
    pub mode_code: u8,
    pub mean_e_u: f64,
}

#[derive(Debug, Clone)]
pub struct GridSummary {
    pub cells: Vec<GridCell>,
    pub frac_local: f64,
    pub frac_offload: f64,
    pub frac_infeasible: f64,
}

fn grid_axes(opts: &RunOptions) -> (Vec<f64>, Vec<f64>) {
    let n = opts.grid_res.max(3);
    let xs = (0..n)
        .map(|i| -15.0 + 30.0 * i as f64 / (n - 1) as f64)
        .collect();
    let ys = (0..n)
        .map(|i| -10.0 + 40.0 * i as f64 / (n - 1) as f64)
        .collect();
    (xs, ys)
}

fn classify_cell(
    params: &SystemParams,
    geo: &Geometry,
    realizations: usize,
    seed: u64,
) -> (u8, f64) {
    let mut counts = [0usize; 3];
    let mut sum = 0.0;
    let mut served = 0usize;
    for r in 0..realizations {
        let ch = gen_channel(params, geo, 0, r as u64, seed).expect("validated geometry");
        match select_mode(params, &ch.gains(), 0.0, 0.0) {
            Ok(sol) => {
                counts[if sol.mode == Mode::Local { 0 } else { 1 }] += 1;
                sum += sol.e_u;
                served += 1;
            }
            Err(_) => counts[2] += 1,
        }
    }
    let code = (0..3).max_by_key(|&i| counts[i]).unwrap() as u8;
    let mean = if served > 0 {
        sum / served as f64
    } else {
        f64::NAN
    };
    (code, mean)
}

/// Mode-selection map over the plane around the configured node layout.
pub fn run_placement_grid(opts: &RunOptions) -> ScenarioResult<GridSummary> {
    let started = Instant::now();
    let (xs, ys) = grid_axes(opts);
    let hap = opts.config.geometry.hap_pos;
    let fs = opts.config.geometry.fs_pos;
    let cells: Vec<GridCell> = ys
        .par_iter()
        .flat_map_iter(|&y| xs.iter().map(move |&x| (x, y)))
        .map(|(x, y)| {
            let geo = match Geometry::new(hap, fs, vec![[x, y]]) {
                Ok(g) => g,
                Err(_) => {
                    // On top of a node: no valid placement.
                    return GridCell {
                        x,
                        y,
                        mode_code: 2,
                        mean_e_u: f64::NAN,
                    };
                }
            };
            let (code, mean) =
                classify_cell(&opts.config.params, &geo, opts.realizations, opts.seed);
            GridCell {
                x,
                y,
                mode_code: code,
                mean_e_u: mean,
            }
        })
        .collect();
    let n = cells.len() as f64;
    let frac = |c: u8| cells.iter().filter(|cell| cell.mode_code == c).count() as f64 / n;
    let summary = GridSummary {
        frac_local: frac(0),
        frac_offload: frac(1),
        frac_infeasible: frac(2),
        cells,
    };
    let rows: Vec<Vec<f64>> = summary
        .cells
        .iter()
        .map(|c| vec![c.x, c.y, c.mode_code as f64, c.mean_e_u])
        .collect();
    let name = Scenario::PlacementGrid.name();
    write_csv(&opts.out_dir, name, "x,y,mode_code,mean_e_u", &rows).map_err(|e| e.to_string())?;
    write_columns(
        &opts.out_dir,
        name,
        "x, y: user position, m (access point and server at the configured positions)\n\
         mode_code: majority decision over realizations; 0 local, 1 offload, 2 infeasible\n\
         mean_e_u: mean net required energy over served realizations, J (NaN if never served)\n",
    )
    .map_err(|e| e.to_string())?;
    write_manifest(&opts.out_dir, name, opts, started.elapsed()).map_err(|e| e.to_string())?;
    Ok(summary)
}

#[derive(Debug, Clone)]
pub struct PapSummary {
    /// (p_ap, offload-area fraction, infeasible fraction).
    pub per_power: Vec<(f64, f64, f64)>,
}

/// Mode maps for a ladder of transmit powers.
pub fn run_sweep_pap(opts: &RunOptions) -> ScenarioResult<PapSummary> {
    let started = Instant::now();
    let powers = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0];
    let (xs, ys) = grid_axes(opts);
    let hap = opts.config.geometry.hap_pos;
    let fs = opts.config.geometry.fs_pos;
    let mut rows = Vec::new();
    let mut per_power = Vec::new();
    for &p_ap in &powers {
        let mut params = opts.config.params.clone();
        params.p_ap = p_ap;
        let cells: Vec<(f64, f64, u8, f64)> = ys
            .par_iter()
            .flat_map_iter(|&y| xs.iter().map(move |&x| (x, y)))
            .map(|(x, y)| match Geometry::new(hap, fs, vec![[x, y]]) {
                Ok(geo) => {
                    let (code, mean) = classify_cell(&params, &geo, opts.realizations, opts.seed);
                    (x, y, code, mean)
                }
                Err(_) => (x, y, 2, f64::NAN),
            })
            .collect();
        let n = cells.len() as f64;
        let fo = cells.iter().filter(|c| c.2 == 1).count() as f64 / n;
        let fi = cells.iter().filter(|c| c.2 == 2).count() as f64 / n;
        per_power.push((p_ap, fo, fi));
        rows.extend(
            cells
                .iter()
                .map(|&(x, y, code, mean)| vec![p_ap, x, y, code as f64, mean]),
        );
    }
    let name = Scenario::SweepPap.name();
    write_csv(&opts.out_dir, name, "p_ap,x,y,mode_code,mean_e_u", &rows)
        .map_err(|e| e.to_string())?;
    write_columns(
        &opts.out_dir,
        name,
        "p_ap: access-point transmit power, W\n\
         x, y: user position, m\n\
         mode_code: 0 local, 1 offload, 2 infeasible (majority over realizations)\n\
         mean_e_u: mean net required energy over served realizations, J\n",
    )
    .map_err(|e| e.to_string())?;
    write_manifest(&opts.out_dir, name, opts, started.elapsed()).map_err(|e| e.to_string())?;
    Ok(PapSummary { per_power })
}

#[derive(Debug, Clone)]
pub struct FramesSummary {
    /// Mean end-of-block storage per frame (user 0), J.
    pub mean_storage: Vec<f64>,
    /// Fraction of seeds with at least one harvest-only block.
    pub seeds_with_harvest_only: f64,
    /// Total harvest-only blocks across all seeds.
    pub harvest_only_blocks: usize,
}

/// Frame-by-frame battery simulation over `realizations` seeds, 100
/// frames each, using the configured geometry.
pub fn run_frames(opts: &RunOptions) -> ScenarioResult<FramesSummary> {
    let started = Instant::now();
    let n_frames = 100;
    let params = &opts.config.params;
    let geo = &opts.config.geometry;
    let cap = opts.config.battery_cap;
    let traces: Vec<_> = (0..opts.realizations)
        .into_par_iter()
        .map(|s| {
            swipt_fog_core::run_frames_capped(params, geo, n_frames, opts.seed + s as u64, cap)
                .expect("validated inputs")
        })
        .collect();
    let mut mean_storage = vec![0.0; n_frames];
    let mut harvest_only_blocks = 0;
    let mut seeds_hit = 0usize;
    for t in &traces {
        let ho = t.harvest_only_blocks();
        harvest_only_blocks += ho;
        if ho > 0 {
            seeds_hit += 1;
        }
        for (f, v) in t.storage_of(0).iter().enumerate() {
            mean_storage[f] += v / traces.len() as f64;
        }
    }
    let summary = FramesSummary {
        mean_storage: mean_storage.clone(),
        seeds_with_harvest_only: seeds_hit as f64 / traces.len() as f64,
        harvest_only_blocks,
    };
    let name = Scenario::Frames.name();
    let rows: Vec<Vec<f64>> = mean_storage
        .iter()
        .enumerate()
        .map(|(f, &v)| vec![f as f64, v])
        .collect();
    write_csv(&opts.out_dir, name, "frame,mean_e_s", &rows).map_err(|e| e.to_string())?;
    // Full per-block trace of the first seed in the standard format.
    let mut buf = Vec::new();
    traces[0].write_csv(&mut buf).map_err(|e| e.to_string())?;
    std::fs::write(opts.out_dir.join("frames.trace.csv"), buf).map_err(|e| e.to_string())?;
    write_columns(
        &opts.out_dir,
        name,
        "frame: frame index (100 frames per run)\n\
         mean_e_s: battery level of user 0 at the end of its block, J, averaged over seeds\n\
         frames.trace.csv: per-block trace of the first seed (frame,mu,mode,e_s,e_u,e_eh)\n",
    )
    .map_err(|e| e.to_string())?;
    write_manifest(&opts.out_dir, name, opts, started.elapsed()).map_err(|e| e.to_string())?;
    Ok(summary)
}

#[derive(Debug, Clone, Copy)]
pub struct MultiuserRow {
    pub m: usize,
    pub mean_greedy: f64,
    pub mean_random: f64,
    pub mean_exhaustive: f64,
    pub greedy_wall_s: f64,
    pub random_wall_s: f64,
    pub exhaustive_wall_s: f64,
    /// Seeds where the exhaustive total exceeded greedy (must be 0).
    pub sandwich_violations: usize,
}

#[derive(Debug, Clone)]
pub struct MultiuserSummary {
    pub rows: Vec<MultiuserRow>,
}

fn place_users(m: usize, seed: u64) -> Geometry {
    use rand::Rng;
    let mut rng = stream(seed, StreamTag::Placement, 0, 0);
    loop {
        let mu: Vec<[f64; 2]> = (0..m)
            .map(|_| [rng.gen_range(-15.0..15.0), rng.gen_range(-5.0..25.0)])
            .collect();
        if let Ok(g) = Geometry::reference(mu) {
            return g;
        }
    }
}

/// Greedy vs random vs exhaustive scheduling for 2..=6 users.
pub fn run_multiuser(opts: &RunOptions) -> ScenarioResult<MultiuserSummary> {
    let started = Instant::now();
    let params = &opts.config.params;
    let mut rows = Vec::new();
    for m in 2..=6usize {
        let per_seed: Vec<(f64, f64, f64, f64, f64, f64)> = (0..opts.realizations)
            .into_par_iter()
            .map(|s| {
                let seed = opts.seed + s as u64;
                let geo = place_users(m, seed);
                let channels: Vec<_> = (0..m)
                    .map(|i| gen_channel(params, &geo, i, 0, seed).expect("valid geometry"))
                    .collect();
                let e_s = vec![0.0; m];
                let t0 = Instant::now();
                let g = greedy_schedule(params, &channels, &e_s);
                let tg = t0.elapsed().as_secs_f64();
                let t1 = Instant::now();
                let r = random_schedule(params, &channels, &e_s, seed);
                let tr = t1.elapsed().as_secs_f64();
                let t2 = Instant::now();
                let x = exhaustive_schedule(params, &channels, &e_s).expect("m <= 6");
                let tx = t2.elapsed().as_secs_f64();
                (g.total_e_u, r.total_e_u, x.total_e_u, tg, tr, tx)
            })
            .collect();
        let n = per_seed.len() as f64;
        let mean =
            |f: fn(&(f64, f64, f64, f64, f64, f64)) -> f64| per_seed.iter().map(f).sum::<f64>() / n;
        let violations = per_seed.iter().filter(|r| r.2 > r.0 + 1e-15).count();
        rows.push(MultiuserRow {
            m,
            mean_greedy: mean(|r| r.0),
            mean_random: mean(|r| r.1),
            mean_exhaustive: mean(|r| r.2),
            greedy_wall_s: per_seed.iter().map(|r| r.3).sum(),
            random_wall_s: per_seed.iter().map(|r| r.4).sum(),
            exhaustive_wall_s: per_seed.iter().map(|r| r.5).sum(),
            sandwich_violations: violations,
        });
    }
    let name = Scenario::Multiuser.name();
    let csv_rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            vec![
                r.m as f64,
                r.mean_greedy,
                r.mean_random,
                r.mean_exhaustive,
                r.greedy_wall_s,
                r.random_wall_s,
                r.exhaustive_wall_s,
            ]
        })
        .collect();
    write_csv(
        &opts.out_dir,
        name,
        "m,mean_greedy,mean_random,mean_exhaustive,greedy_wall_s,random_wall_s,exhaustive_wall_s",
        &csv_rows,
    )
    .map_err(|e| e.to_string())?;
    write_columns(
        &opts.out_dir,
        name,
        "m: number of users in the frame\n\
         mean_greedy / mean_random / mean_exhaustive: mean frame totals of net required energy, J\n\
         *_wall_s: summed wall-clock seconds across seeds for each scheduler\n",
    )
    .map_err(|e| e.to_string())?;
    write_manifest(&opts.out_dir, name, opts, started.elapsed()).map_err(|e| e.to_string())?;
    Ok(MultiuserSummary { rows })
}

#[derive(Debug, Clone)]
pub struct CsiSummary {
    /// (eps, mean required energy, mode-mismatch fraction).
    pub per_eps: Vec<(f64, f64, f64)>,
    /// Relative increase of the mean required energy at eps = 0.10 vs 0.
    pub increase_at_10pct: f64,
}

/// Re-prices an estimate-derived decision on the true channel: the time
/// splits stay, the PS ratio and transmit power are re-raised to meet
/// the rate threshold on the true gains.
fn reprice(
    params: &SystemParams,
    truth: &LinkGains,
    decided: &swipt_fog_core::ModeSolution,
) -> Option<f64> {
    use swipt_fog_core::offload::{power_for_slot, rho_for_slot};
    let rho = rho_for_slot(params, truth.g_ap_u, decided.tau_ipt);
    if rho >= 1.0 {
        return None;
    }
    let bits = params.r_th * params.t_b;
    let e_id = params.xi * bits;
    let e_eh = params.eta * (1.0 - rho) * params.p_ap * truth.g_ap_u * decided.tau_ipt;
    match decided.mode {
        Mode::Local => Some(e_id + decided.e_cpt - e_eh),
        Mode::Offload => {
            let p = power_for_slot(params, truth.g_uf, decided.tau_uf);
            Some(e_id + p * decided.tau_uf - e_eh)
        }
    }
}

/// Mode decisions and required energy under imperfect channel estimates,
/// averaged over the placement map.
pub fn run_csi_error(opts: &RunOptions) -> ScenarioResult<CsiSummary> {
    let started = Instant::now();
    let eps_list = [0.0, 0.02, 0.04, 0.06, 0.08, 0.10];
    let (xs, ys) = grid_axes(opts);
    let hap = opts.config.geometry.hap_pos;
    let fs = opts.config.geometry.fs_pos;
    let params = &opts.config.params;

    // Collect per-cell contributions; reduce in fixed order afterwards.
    let cell_results: Vec<Vec<(f64, usize, usize, usize)>> = ys
        .par_iter()
        .flat_map_iter(|&y| xs.iter().map(move |&x| (x, y)))
        .map(|(x, y)| {
            let mut per_eps = vec![(0.0, 0usize, 0usize, 0usize); eps_list.len()];
            let geo = match Geometry::new(hap, fs, vec![[x, y]]) {
                Ok(g) => g,
                Err(_) => return per_eps,
            };
            for r in 0..opts.realizations {
                let truth =
                    gen_channel(params, &geo, 0, r as u64, opts.seed).expect("validated geometry");
                let reference = select_mode(params, &truth.gains(), 0.0, 0.0);
                for (i, &eps) in eps_list.iter().enumerate() {
                    let est = perturb_csi(&truth, eps, opts.seed ^ ((r as u64) << 8) ^ i as u64);
                    let decided = match select_mode(params, &est.gains(), 0.0, 0.0) {
                        Ok(d) => d,
                        Err(_) => continue,
                    };
                    if let Some(e) = reprice(params, &truth.gains(), &decided) {
                        per_eps[i].0 += e;
                        per_eps[i].1 += 1;
                        if let Ok(ref best) = reference {
                            if best.mode != decided.mode {
                                per_eps[i].2 += 1;
                            }
                            per_eps[i].3 += 1;
                        }
                    }
                }
            }
            per_eps
        })
        .collect();

    let mut per_eps = Vec::new();
    for (i, &eps) in eps_list.iter().enumerate() {
        let (mut sum, mut n, mut mism, mut total) = (0.0, 0usize, 0usize, 0usize);
        for cell in &cell_results {
            sum += cell[i].0;
            n += cell[i].1;
            mism += cell[i].2;
            total += cell[i].3;
        }
        let mean = if n > 0 { sum / n as f64 } else { f64::NAN };
        let mismatch = if total > 0 {
            mism as f64 / total as f64
        } else {
            f64::NAN
        };
        per_eps.push((eps, mean, mismatch));
    }
    let base = per_eps[0].1;
    let at10 = per_eps.last().unwrap().1;
    let summary = CsiSummary {
        increase_at_10pct: (at10 - base) / base.abs(),
        per_eps: per_eps.clone(),
    };
    let name = Scenario::CsiError.name();
    let rows: Vec<Vec<f64>> = per_eps.iter().map(|&(e, m, f)| vec![e, m, f]).collect();
    write_csv(
        &opts.out_dir,
        name,
        "eps,mean_e_u,mode_mismatch_fraction",
        &rows,
    )
    .map_err(|e| e.to_string())?;
    write_columns(
        &opts.out_dir,
        name,
        "eps: channel-estimate error factor (each coefficient scaled by 1 + eps*u, u uniform [-1,1])\n\
         mean_e_u: mean net required energy when decisions use the erroneous estimate but the\n\
                   physics follows the true channel, J, averaged over the placement map\n\
         mode_mismatch_fraction: share of draws whose mode differs from the true-channel optimum\n",
    )
    .map_err(|e| e.to_string())?;
    write_manifest(&opts.out_dir, name, opts, started.elapsed()).map_err(|e| e.to_string())?;
    Ok(summary)
}

/// Runs a scenario by kind, discarding the typed summary.
pub fn run_any(opts: &RunOptions, scenario: Scenario) -> ScenarioResult<()> {
    match scenario {
        Scenario::SweepK => run_sweep_k(opts).map(drop),
        Scenario::SweepDist => run_sweep_dist(opts).map(drop),
        Scenario::LinePlacement => run_line_placement(opts).map(drop),
        Scenario::PlacementGrid => run_placement_grid(opts).map(drop),
        Scenario::SweepPap => run_sweep_pap(opts).map(drop),
        Scenario::SweepBeta => run_sweep_beta(opts).map(drop),
        Scenario::Frames => run_frames(opts).map(drop),
        Scenario::Multiuser => run_multiuser(opts).map(drop),
        Scenario::CsiError => run_csi_error(opts).map(drop),
    }
}
