use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gme_cli::config::{KindSelection, ScenarioConfig};
use gme_cli::presets;
use gme_cli::run::{run_scenario, RunOptions};

/// Steady states, emission spectra and populations of a driven
/// cavity-exciton-vibration system under the standard and the generalized
/// master equation.
#[derive(Debug, Parser)]
#[command(name = "gme", version)]
struct Args {
    /// Scenario file (TOML).
    #[arg(long, conflicts_with_all = ["preset", "list_presets"])]
    config: Option<PathBuf>,
    /// Built-in scenario, see --list-presets.
    #[arg(long)]
    preset: Option<String>,
    /// Print the built-in scenario names and exit.
    #[arg(long)]
    list_presets: bool,
    /// Print the scenario as TOML instead of running it.
    #[arg(long)]
    print_config: bool,
    /// CSV destination; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Override the number of retained dressed levels.
    #[arg(long)]
    levels: Option<usize>,
    /// Override the master equation: sme, gme or both.
    #[arg(long)]
    kind: Option<KindSelection>,
    /// Worker threads for grid points; defaults to available parallelism.
    #[arg(long)]
    threads: Option<usize>,
    /// Omit the timestamp so identical runs produce identical files.
    #[arg(long)]
    reproducible: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    match run(args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(args: Args) -> Result<ExitCode, String> {
    if args.list_presets {
        for name in presets::names() {
            println!("{name}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => ScenarioConfig::load(path).map_err(|e| e.to_string())?,
        (None, Some(name)) => presets::load(name).map_err(|e| e.to_string())?,
        (None, None) => return Err("one of --config or --preset is required".into()),
    };
    if let Some(levels) = args.levels {
        cfg.levels = levels;
    }
    if let Some(kind) = args.kind {
        cfg.kind = kind;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    if args.print_config {
        print!("{}", cfg.to_toml());
        return Ok(ExitCode::SUCCESS);
    }

    let threads = match args.threads {
        Some(0) => return Err("--threads must be at least 1".into()),
        Some(n) => n,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())?;
    gme_core::sequential_dense_kernels();

    let opts = RunOptions { preset: args.preset.clone(), reproducible: args.reproducible };
    let outcome = run_scenario(&cfg, &opts).map_err(|e| e.to_string())?;
    match &args.output {
        Some(path) => outcome.table.write(path).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{}", outcome.table.to_csv()),
    }
    if outcome.failures.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    for f in &outcome.failures {
        eprintln!("failed point: {f}");
    }
    eprintln!("{} of the grid points failed", outcome.failures.len());
    Ok(ExitCode::from(1))
}
