//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see the lines for passing
//! tests too). Every tolerance and band is pinned in this file; the
//! FAIL messages carry the measured values.

use std::f64::consts::LN_2;
use std::time::Instant;

use rand::Rng;
use swipt_fog::scenarios::{
    run_csi_error, run_frames, run_line_placement, run_multiuser, run_sweep_beta, run_sweep_dist,
    run_sweep_k,
};
use swipt_fog::RunOptions;
use swipt_fog_core::analysis::{beta_threshold, k_threshold};
use swipt_fog_core::*;

fn outdir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("swipt-fog-acceptance-{name}"));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// Well-conditioned random instance: the optimum sits strictly inside
/// the lattice ranges (PS ratio a third to two thirds, time splits
/// interior, energies on a stable scale), so a finite grid oracle can
/// converge at the stated tolerance.
struct Instance {
    p: SystemParams,
    gains: LinkGains,
    iota: f64,
    e_s: f64,
}

fn conditioned_instance(seed: u64) -> Instance {
    let mut rng = stream(seed, StreamTag::Placement, 99, 99);
    let mut p = SystemParams::default();
    p.eta = rng.gen_range(0.4..0.8);
    p.r_th = 10f64.powf(rng.gen_range(5.0..5.5));
    let kr_frac: f64 = rng.gen_range(0.1..0.5);
    p.k_ops = kr_frac * p.f_op / p.r_th;
    let g_ap = 10f64.powf(rng.gen_range(-6.0..-4.5));
    let rho_t: f64 = rng.gen_range(0.35..0.65);
    let exp_loc = p.r_th * p.f_op / (p.bandwidth * (p.f_op - p.k_ops * p.r_th));
    p.noise_n = rho_t * p.p_ap * g_ap / ((exp_loc * LN_2).exp_m1());
    let c = p.eta * p.p_ap * g_ap;
    p.xi = rng.gen_range(0.2..2.0) * c / p.r_th;
    let g_uf = 10f64.powf(rng.gen_range(-6.0..-5.0));
    let a_over_c = 10f64.powf(rng.gen_range(0.0..1.5));
    p.noise_s = a_over_c * c * g_uf;
    p.noise_f = p.noise_s;
    let iota = if rng.gen_bool(0.5) {
        rng.gen_range(0.0..2.0) * c * p.t_b
    } else {
        0.0
    };
    let e_s = rng.gen_range(12.0..20.0) * c * p.t_b;
    Instance {
        p,
        gains: LinkGains {
            g_ap_u: g_ap,
            g_uf,
            g_fu: g_uf,
        },
        iota,
        e_s,
    }
}

// ---------------------------------------------------------------------

#[test]
fn criterion_01_oracle_equivalence_local() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let inst = conditioned_instance(seed);
        let sol = solve_local(&inst.p, inst.gains.g_ap_u, inst.iota, inst.e_s).unwrap();
        let grid = grid_search_local(&inst.p, inst.gains.g_ap_u, inst.iota, inst.e_s, 400).unwrap();
        assert!(
            sol.e_u <= grid.e_u + 1e-12,
            "seed {seed}: solver {} exceeds the lattice {}",
            sol.e_u,
            grid.e_u
        );
        let gap = (sol.e_u - grid.e_u).abs() / sol.e_u.abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-3, "seed {seed}: relative gap {gap}");
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = elapsed <= 60.0;
    report(
        "1 (oracle equivalence, local)",
        pass,
        &format!("100 instances, worst gap {worst:.2e}, {elapsed:.1}s"),
    );
    assert!(pass, "runtime {elapsed:.1}s exceeds 60s");
}

#[test]
fn criterion_02_oracle_equivalence_offload() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    let mut clamped_count = 0;
    for seed in 0..100u64 {
        let mut inst = conditioned_instance(1000 + seed);
        // Scale the power budget to the instance so the power lattice
        // brackets the operating point: below the unconstrained
        // requirement for the first 20 (deliberately clamped), a small
        // multiple of it for the rest.
        let free = solve_offload(&inst.p, &inst.gains, inst.iota, inst.e_s).unwrap();
        if seed < 20 {
            inst.p.p_uf_max = free.clamp_threshold * (0.2 + 0.025 * seed as f64);
        } else {
            inst.p.p_uf_max = free.clamp_threshold * (2.0 + 0.05 * (seed % 60) as f64);
        }
        let out = solve_offload(&inst.p, &inst.gains, inst.iota, inst.e_s).unwrap();
        if out.clamped {
            clamped_count += 1;
        }
        let grid = grid_search_offload(&inst.p, &inst.gains, inst.iota, inst.e_s, 400).unwrap();
        assert!(
            out.solution.e_u <= grid.e_u + 1e-12,
            "seed {seed}: solver {} exceeds the lattice {}",
            out.solution.e_u,
            grid.e_u
        );
        let gap = (out.solution.e_u - grid.e_u).abs() / out.solution.e_u.abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-3, "seed {seed}: relative gap {gap}");
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = elapsed <= 120.0 && clamped_count >= 20;
    report(
        "2 (oracle equivalence, offload)",
        pass,
        &format!("100 instances ({clamped_count} clamped), worst gap {worst:.2e}, {elapsed:.1}s"),
    );
    assert!(clamped_count >= 20, "need at least 20 clamped instances");
    assert!(pass, "runtime {elapsed:.1}s exceeds 120s");
}

#[test]
fn criterion_03_gradient_check() {
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        let inst = conditioned_instance(2000 + seed);
        let budget = offload_budget(&inst.p, inst.gains.g_fu).unwrap();
        let t = budget.t_frak;
        let scale_slope = inst.p.eta * inst.p.p_ap * inst.gains.g_ap_u;
        let mut rng = stream(seed, StreamTag::Placement, 3, 3);
        let mut checked = 0;
        while checked < 20 {
            let tau = t * rng.gen_range(0.05..0.95);
            let exact = reduced_objective_slope(&inst.p, &inst.gains, tau).unwrap();
            // Relative error needs a nonzero denominator; skip the
            // immediate neighborhood of the stationary point.
            if exact.abs() < 1e-5 * scale_slope {
                continue;
            }
            let h = 1e-4 * tau.min(t - tau);
            let f =
                |x: f64| reduced_objective(&inst.p, &inst.gains, x, inst.iota, inst.e_s).unwrap();
            // Five-point central difference.
            let fd = (f(tau - 2.0 * h) - 8.0 * f(tau - h) + 8.0 * f(tau + h) - f(tau + 2.0 * h))
                / (12.0 * h);
            let rel = (fd - exact).abs() / exact.abs();
            worst = worst.max(rel);
            assert!(rel <= 1e-6, "seed {seed} tau {tau}: rel error {rel:.2e}");
            checked += 1;
        }
    }
    report(
        "3 (gradient check)",
        true,
        &format!("50 instances x 20 points, worst rel error {worst:.2e}"),
    );
}

#[test]
fn criterion_04_convexity_certificate() {
    let mut total = 0;
    for seed in 0..100u64 {
        let inst = conditioned_instance(3000 + seed);
        let budget = offload_budget(&inst.p, inst.gains.g_fu).unwrap();
        let t = budget.t_frak;
        let h = 1e-3 * t;
        let mut rng = stream(seed, StreamTag::Placement, 4, 4);
        for _ in 0..10 {
            let tau = t * rng.gen_range(0.01 + 2e-3..0.99 - 2e-3);
            let f =
                |x: f64| reduced_objective(&inst.p, &inst.gains, x, inst.iota, inst.e_s).unwrap();
            let second = f(tau + h) + f(tau - h) - 2.0 * f(tau);
            assert!(
                second > 0.0,
                "seed {seed} tau {tau}: second difference {second:e} not positive"
            );
            // The analytic slope must agree with the certificate.
            let up = reduced_objective_slope(&inst.p, &inst.gains, tau + h).unwrap();
            let down = reduced_objective_slope(&inst.p, &inst.gains, tau - h).unwrap();
            assert!(up > down, "seed {seed} tau {tau}: slope not increasing");
            total += 1;
        }
    }
    report(
        "4 (convexity certificate)",
        true,
        &format!("{total} sampled points, all second differences positive"),
    );
}

#[test]
fn criterion_05_k_crossover() {
    let started = Instant::now();
    let opts = RunOptions::new(Config::default(), outdir("sweep-k"));
    let summary = run_sweep_k(&opts).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let hit = summary
        .crossovers
        .iter()
        .any(|&k| (3.8e3..=5.8e3).contains(&k));
    let pass = hit && elapsed <= 120.0;
    report(
        "5 (K crossover in [3.8e3, 5.8e3])",
        pass,
        &format!(
            "crossovers at {:?} ops/bit, {elapsed:.1}s",
            summary.crossovers
        ),
    );
    assert!(
        pass,
        "no mode-preference crossover inside [3.8e3, 5.8e3]; found {:?} (runtime {elapsed:.1}s)",
        summary.crossovers
    );
}

#[test]
fn criterion_06_distance_crossover() {
    let opts = RunOptions::new(Config::default(), outdir("sweep-dist"));
    let summary = run_sweep_dist(&opts).unwrap();
    let hit = summary
        .crossovers
        .iter()
        .any(|&d| (10.5..=14.5).contains(&d));
    report(
        "6 (distance crossover in [10.5, 14.5] m)",
        hit,
        &format!("crossovers at {:?} m", summary.crossovers),
    );
    assert!(
        hit,
        "no crossover inside [10.5, 14.5] m; found {:?}",
        summary.crossovers
    );
}

#[test]
fn criterion_07_line_placement_crossovers() {
    let opts = RunOptions::new(Config::default(), outdir("line-placement"));
    let summary = run_line_placement(&opts).unwrap();
    let near = summary.crossovers.iter().any(|&x| (1.0..=4.0).contains(&x));
    let far = summary
        .crossovers
        .iter()
        .any(|&x| (12.0..=17.0).contains(&x));
    let pass = near && far;
    report(
        "7 (line placement crossovers in [1,4] and [12,17] m)",
        pass,
        &format!("crossovers at {:?} m", summary.crossovers),
    );
    assert!(
        pass,
        "expected crossovers in [1,4] and [12,17] m; found {:?}",
        summary.crossovers
    );
}

#[test]
fn criterion_08_beta_crossover() {
    let opts = RunOptions::new(Config::default(), outdir("sweep-beta"));
    let summary = run_sweep_beta(&opts).unwrap();
    let hit = summary
        .crossovers
        .iter()
        .any(|&b| (0.5e2..=2e2).contains(&b));
    report(
        "8 (beta crossover in [0.5e2, 2e2])",
        hit,
        &format!("crossovers at {:?}", summary.crossovers),
    );
    assert!(
        hit,
        "no crossover inside [0.5e2, 2e2]; found {:?}",
        summary.crossovers
    );
}

#[test]
fn criterion_09_scheduling_sandwich() {
    let opts = RunOptions::new(Config::default(), outdir("multiuser"));
    let summary = run_multiuser(&opts).unwrap();
    let mut pass = true;
    for row in &summary.rows {
        if row.sandwich_violations > 0 {
            pass = false;
        }
        if row.mean_greedy > row.mean_random {
            pass = false;
        }
    }
    // Qualitative complexity ordering: the exhaustive search blows up
    // with M far faster than greedy.
    let first = &summary.rows[0];
    let last = summary.rows.last().unwrap();
    let exhaustive_growth = last.exhaustive_wall_s / first.exhaustive_wall_s.max(1e-12);
    let greedy_growth = last.greedy_wall_s / first.greedy_wall_s.max(1e-12);
    let timing_ok = exhaustive_growth > 4.0 * greedy_growth;
    report(
        "9 (scheduling sandwich)",
        pass && timing_ok,
        &format!(
            "violations {:?}, greedy<=random {:?}, wall growth greedy {greedy_growth:.1}x vs exhaustive {exhaustive_growth:.1}x",
            summary.rows.iter().map(|r| r.sandwich_violations).collect::<Vec<_>>(),
            summary.rows.iter().map(|r| r.mean_greedy <= r.mean_random).collect::<Vec<_>>(),
        ),
    );
    assert!(pass, "ordering guarantees violated");
    assert!(
        timing_ok,
        "exhaustive growth {exhaustive_growth:.1}x not clearly factorial vs greedy {greedy_growth:.1}x"
    );
}

#[test]
fn criterion_10_frame_dynamics() {
    // d = 18 m: serve every block, monotone mean storage.
    let mut cfg18 = Config::default();
    cfg18.geometry = Geometry::collinear(18.0, 8.0, 1).unwrap();
    let opts18 = RunOptions::new(cfg18, outdir("frames-18"));
    let s18 = run_frames(&opts18).unwrap();
    let monotone = s18.mean_storage.windows(2).all(|w| w[1] >= w[0] - 1e-15);
    let zero_harvest_only = s18.harvest_only_blocks == 0;

    // d = 20 m: at least one harvest-only block in at least half the seeds.
    let mut cfg20 = Config::default();
    cfg20.geometry = Geometry::collinear(20.0, 8.0, 1).unwrap();
    let opts20 = RunOptions::new(cfg20, outdir("frames-20"));
    let s20 = run_frames(&opts20).unwrap();
    let harvesting_common = s20.seeds_with_harvest_only >= 0.5;

    let pass = monotone && zero_harvest_only && harvesting_common;
    report(
        "10 (frame dynamics)",
        pass,
        &format!(
            "d=18: harvest-only blocks {}, monotone {}; d=20: harvest-only in {:.0}% of seeds",
            s18.harvest_only_blocks,
            monotone,
            100.0 * s20.seeds_with_harvest_only
        ),
    );
    assert!(
        zero_harvest_only,
        "d=18m run produced {} harvest-only blocks",
        s18.harvest_only_blocks
    );
    assert!(monotone, "d=18m mean storage not monotone nondecreasing");
    assert!(
        harvesting_common,
        "d=20m: harvest-only blocks in only {:.0}% of seeds (need >= 50%)",
        100.0 * s20.seeds_with_harvest_only
    );
}

#[test]
fn criterion_11_threshold_formulas_vs_oracle() {
    // Complexity threshold on conditioned instances with a genuine
    // crossover; scaling threshold on instances whose crossover sits in
    // the power-clamped regime (where the closed form is exact).
    let mut k_checked = 0;
    let mut worst_k = 0.0f64;
    let mut seed = 0u64;
    while k_checked < 50 && seed < 400 {
        let inst = conditioned_instance(4000 + seed);
        seed += 1;
        let rep = match k_threshold(&inst.p, &inst.gains, inst.iota, inst.e_s) {
            Ok(r) => r,
            Err(_) => continue, // no crossover on this instance
        };
        worst_k = worst_k.max(rep.rel_gap);
        assert!(
            rep.rel_gap <= 1e-6,
            "seed {seed}: complexity threshold gap {:.2e} (formula {}, oracle {})",
            rep.rel_gap,
            rep.value,
            rep.oracle_value
        );
        k_checked += 1;
    }
    assert!(
        k_checked == 50,
        "only {k_checked} complexity instances converged"
    );

    let mut b_checked = 0;
    let mut worst_b = 0.0f64;
    let mut logged = 0;
    seed = 0;
    while b_checked < 50 && seed < 600 {
        let mut inst = conditioned_instance(5000 + seed);
        seed += 1;
        // Push the crossover into the clamped regime.
        if let Ok(free) = solve_offload(&inst.p, &inst.gains, inst.iota, inst.e_s) {
            inst.p.p_uf_max = free.clamp_threshold * 0.5;
        } else {
            continue;
        }
        let rep = match beta_threshold(&inst.p, &inst.gains, inst.iota, inst.e_s) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if rep.branch_used.is_none() {
            // Crossover fell outside the closed form's regime: the
            // envelope estimate is first-order only. Log and let the
            // oracle value gate.
            logged += 1;
            println!(
                "  beta instance {seed}: closed form out of regime (formula {}, oracle {}, gap {:.2e})",
                rep.value, rep.oracle_value, rep.rel_gap
            );
            continue;
        }
        worst_b = worst_b.max(rep.rel_gap);
        assert!(
            rep.rel_gap <= 1e-6,
            "seed {seed}: scaling threshold gap {:.2e} (formula {}, oracle {})",
            rep.rel_gap,
            rep.value,
            rep.oracle_value
        );
        b_checked += 1;
    }
    assert!(
        b_checked == 50,
        "only {b_checked} scaling instances converged"
    );
    report(
        "11 (threshold formulas vs oracle)",
        true,
        &format!(
            "50+50 instances, worst gaps K0 {worst_k:.2e}, beta0 {worst_b:.2e} ({logged} out-of-regime logged)"
        ),
    );
}

#[test]
fn criterion_12_csi_sensitivity() {
    let mut opts = RunOptions::new(Config::default(), outdir("csi-error"));
    opts.grid_res = 21;
    let summary = run_csi_error(&opts).unwrap();
    let inc = summary.increase_at_10pct;
    let pass = (0.04..=0.10).contains(&inc);
    report(
        "12 (CSI sensitivity, +4..10% at eps=0.10)",
        pass,
        &format!(
            "mean required energy change {:.2}% (per-eps: {:?})",
            100.0 * inc,
            summary
                .per_eps
                .iter()
                .map(|&(e, m, _)| (e, m))
                .collect::<Vec<_>>()
        ),
    );
    assert!(
        pass,
        "mean required-energy increase {:.2}% outside [4%, 10%]",
        100.0 * inc
    );
}
