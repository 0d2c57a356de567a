//! TDMA user ordering over one frame: greedy minimum-energy scheduling,
//! a uniform-random baseline, and an exhaustive O(M!) oracle, all with
//! broadcast-energy accumulation across blocks.

use rand::seq::SliceRandom;

use crate::channel::{stream, ChannelRealization, StreamTag};
use crate::error::{Error, Result};
use crate::mode::select_mode;
use crate::params::SystemParams;
use crate::solution::ModeSolution;

/// Hard cap for the exhaustive search.
pub const EXHAUSTIVE_MAX_USERS: usize = 9;

/// What happened in one scheduled block.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockOutcome {
    Served(ModeSolution),
    /// No feasible mode: the user spends the whole block harvesting with
    /// the splitter fully on the harvester.
    HarvestOnly {
        e_eh: f64,
    },
}

impl BlockOutcome {
    pub fn e_u(&self) -> f64 {
        match self {
            BlockOutcome::Served(s) => s.e_u,
            BlockOutcome::HarvestOnly { .. } => 0.0,
        }
    }

    pub fn e_eh(&self) -> f64 {
        match self {
            BlockOutcome::Served(s) => s.e_eh,
            BlockOutcome::HarvestOnly { e_eh } => *e_eh,
        }
    }
}

/// One frame's schedule: the permutation, per-block outcomes, and the
/// broadcast-credit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    /// 0/1 assignment matrix, `psi[m][t] = 1` iff user m served in block t.
    pub psi: Vec<Vec<u8>>,
    /// Block index to user index.
    pub order: Vec<usize>,
    /// Outcome of each block, in block order.
    pub solutions: Vec<BlockOutcome>,
    /// Broadcast credit available to each block, in block order.
    pub iota_trace: Vec<f64>,
    /// Sum of net required energies across served blocks, J.
    pub total_e_u: f64,
}

impl Schedule {
    fn from_blocks(
        n: usize,
        order: Vec<usize>,
        solutions: Vec<BlockOutcome>,
        iota: Vec<f64>,
    ) -> Self {
        let mut psi = vec![vec![0u8; n]; n];
        for (t, &m) in order.iter().enumerate() {
            psi[m][t] = 1;
        }
        let total_e_u = solutions.iter().map(|b| b.e_u()).sum();
        Schedule {
            psi,
            order,
            solutions,
            iota_trace: iota,
            total_e_u,
        }
    }
}

/// Energy a served block contributes to every later user's credit:
/// `eta * P_AP * g * tau_ipt` of the beamformed transmission.
pub fn broadcast_increment(params: &SystemParams, g_ap_u_prev: f64, tau_ipt_prev: f64) -> f64 {
    params.eta * params.p_ap * g_ap_u_prev * tau_ipt_prev
}

fn evaluate_block(
    params: &SystemParams,
    ch: &ChannelRealization,
    iota: f64,
    e_s: f64,
) -> BlockOutcome {
    match select_mode(params, &ch.gains(), iota, e_s) {
        Ok(sol) => BlockOutcome::Served(sol),
        Err(_) => BlockOutcome::HarvestOnly {
            e_eh: params.eta * params.p_ap * ch.g_ap_u * params.t_b + iota,
        },
    }
}

fn increment_for(params: &SystemParams, ch: &ChannelRealization, outcome: &BlockOutcome) -> f64 {
    let tau = match outcome {
        BlockOutcome::Served(s) => s.tau_ipt,
        BlockOutcome::HarvestOnly { .. } => params.t_b,
    };
    broadcast_increment(params, ch.g_ap_u, tau)
}

/// Runs the blocks in a fixed user order, accumulating the credit.
fn run_order(
    params: &SystemParams,
    channels: &[ChannelRealization],
    e_s: &[f64],
    order: &[usize],
) -> (Vec<BlockOutcome>, Vec<f64>) {
    let mut iota = 0.0;
    let mut outcomes = Vec::with_capacity(order.len());
    let mut trace = Vec::with_capacity(order.len());
    for &m in order {
        trace.push(iota);
        let outcome = evaluate_block(params, &channels[m], iota, e_s[m]);
        iota += increment_for(params, &channels[m], &outcome);
        outcomes.push(outcome);
    }
    (outcomes, trace)
}

/// Greedy schedule: each block serves the unscheduled user with the
/// smallest net required energy under the current credit, ties going to
/// the lowest index. Users with no feasible mode are deferred behind all
/// feasible ones and marked harvest-only.
pub fn greedy_schedule(
    params: &SystemParams,
    channels: &[ChannelRealization],
    e_s: &[f64],
) -> Schedule {
    let n = channels.len();
    assert_eq!(n, e_s.len(), "one stored-energy entry per user");
    assert!(n >= 1, "at least one user");
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut outcomes = Vec::with_capacity(n);
    let mut trace = Vec::with_capacity(n);
    let mut iota = 0.0;
    while !remaining.is_empty() {
        let mut best: Option<(usize, ModeSolution)> = None;
        for &m in &remaining {
            if let Ok(sol) = select_mode(params, &channels[m].gains(), iota, e_s[m]) {
                let better = match &best {
                    None => true,
                    Some((bm, bs)) => sol.e_u < bs.e_u || (sol.e_u == bs.e_u && m < *bm),
                };
                if better {
                    best = Some((m, sol));
                }
            }
        }
        let (m, outcome) = match best {
            Some((m, sol)) => (m, BlockOutcome::Served(sol)),
            // No feasible user left: lowest index harvests.
            None => {
                let m = remaining[0];
                (m, evaluate_block(params, &channels[m], iota, e_s[m]))
            }
        };
        trace.push(iota);
        iota += increment_for(params, &channels[m], &outcome);
        order.push(m);
        outcomes.push(outcome);
        remaining.retain(|&x| x != m);
    }
    Schedule::from_blocks(n, order, outcomes, trace)
}

/// Global optimum by enumerating every permutation (lexicographic order,
/// first minimum kept). Refuses more than [`EXHAUSTIVE_MAX_USERS`] users.
pub fn exhaustive_schedule(
    params: &SystemParams,
    channels: &[ChannelRealization],
    e_s: &[f64],
) -> Result<Schedule> {
    let n = channels.len();
    if n > EXHAUSTIVE_MAX_USERS {
        return Err(Error::TooManyUsers(n, EXHAUSTIVE_MAX_USERS));
    }
    assert_eq!(n, e_s.len());
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let (outcomes, _) = run_order(params, channels, e_s, &perm);
        let total: f64 = outcomes.iter().map(|b| b.e_u()).sum();
        if best.as_ref().map_or(true, |(bt, _)| total < *bt) {
            best = Some((total, perm.clone()));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (_, order) = best.expect("at least one permutation");
    let (outcomes, trace) = run_order(params, channels, e_s, &order);
    Ok(Schedule::from_blocks(n, order, outcomes, trace))
}

/// Uniformly random order, reproducible from the seed.
pub fn random_schedule(
    params: &SystemParams,
    channels: &[ChannelRealization],
    e_s: &[f64],
    seed: u64,
) -> Schedule {
    let n = channels.len();
    assert_eq!(n, e_s.len());
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = stream(seed, StreamTag::Permutation, 0, 0);
    order.shuffle(&mut rng);
    let (outcomes, trace) = run_order(params, channels, e_s, &order);
    Schedule::from_blocks(n, order, outcomes, trace)
}

/// Lexicographic next permutation; false once the sequence is exhausted.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
