use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use swipt_fog::{init_threads, scenarios, RunOptions, Scenario};
use swipt_fog_core::{parse_config, Config};

const EXIT_UNKNOWN_SCENARIO: u8 = 2;
const EXIT_UNWRITABLE_OUT: u8 = 3;
const EXIT_INVALID_CONFIG: u8 = 4;

/// Scenario runner for the SWIPT fog-offloading solver.
#[derive(Parser, Debug)]
#[command(name = "swipt-fog", version, about)]
struct Args {
    /// Scenario name: sweep-k, sweep-dist, line-placement, placement-grid,
    /// sweep-pap, sweep-beta, frames, multiuser, csi-error
    scenario: String,
    /// Parameter file (flat `key = value`); defaults apply when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for CSV/manifest files (created if missing)
    #[arg(long)]
    out: PathBuf,
    /// Channel realizations (or seeds) per sweep point
    #[arg(long, default_value_t = 200)]
    realizations: usize,
    /// Master seed for all randomness
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Cells per axis for the placement maps
    #[arg(long, default_value_t = 41)]
    grid_res: usize,
}

fn main() -> ExitCode {
    init_threads();
    let args = Args::parse();

    let Some(scenario) = Scenario::from_name(&args.scenario) else {
        eprintln!(
            "unknown scenario `{}`; known: {}",
            args.scenario,
            Scenario::ALL
                .iter()
                .map(|(n, _)| *n)
                .collect::<Vec<_>>()
                .join(", ")
        );
        return ExitCode::from(EXIT_UNKNOWN_SCENARIO);
    };

    let config: Config = match &args.config {
        None => Config::default(),
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read config {}: {e}", path.display());
                    return ExitCode::from(EXIT_INVALID_CONFIG);
                }
            };
            match parse_config(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("invalid config {}: {e}", path.display());
                    return ExitCode::from(EXIT_INVALID_CONFIG);
                }
            }
        }
    };
    if args.realizations == 0 {
        eprintln!("invalid configuration: --realizations must be at least 1");
        return ExitCode::from(EXIT_INVALID_CONFIG);
    }
    if args.grid_res < 3 {
        eprintln!("invalid configuration: --grid-res must be at least 3");
        return ExitCode::from(EXIT_INVALID_CONFIG);
    }

    if let Err(e) = fs::create_dir_all(&args.out) {
        eprintln!("cannot create output directory {}: {e}", args.out.display());
        return ExitCode::from(EXIT_UNWRITABLE_OUT);
    }
    // Probe writability before doing any work.
    let probe = args.out.join(".write-probe");
    if fs::write(&probe, b"").is_err() {
        eprintln!("output directory {} is not writable", args.out.display());
        return ExitCode::from(EXIT_UNWRITABLE_OUT);
    }
    let _ = fs::remove_file(&probe);

    let opts = RunOptions {
        config,
        out_dir: args.out.clone(),
        realizations: args.realizations,
        seed: args.seed,
        grid_res: args.grid_res,
    };
    match scenarios::run_any(&opts, scenario) {
        Ok(()) => {
            println!(
                "{}: wrote {}.csv, {}.columns.txt, {}.manifest.json in {}",
                scenario.name(),
                scenario.name(),
                scenario.name(),
                scenario.name(),
                args.out.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("scenario failed: {e}");
            ExitCode::from(EXIT_UNWRITABLE_OUT)
        }
    }
}
