use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kuramoto_certify::config::{
    ExperimentConfig, ExperimentKind, DEFAULT_FIGURE1_BUDGET, DEFAULT_PATTERN_BUDGET,
    DEFAULT_REGION_GRID_STEP, DEFAULT_SEED, DEFAULT_TRIALS,
};
use kuramoto_certify::experiments::{
    run_basin, run_certify, run_figure1, run_pattern_search, run_razor_edge, run_region_scan,
    write_figure1_csv, BasinOptions,
};
use kuramoto_certify::HarnessError;

/// Experiment driver for Kuramoto synchronization certificates.
#[derive(Parser)]
#[command(name = "kuramoto-certify", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-n bound curve, densest found circulant pattern, and razor-edge
    /// connectivity (CSV).
    Figure1 {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        n_min: u64,
        #[arg(long, default_value_t = 50)]
        n_max: u64,
        /// Max circulants examined per n.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral and basin analysis of the twin(C4, m) sequence (JSON).
    RazorEdge {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Densest circulant on n nodes supporting a stable twisted state (JSON).
    PatternSearch {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo basin-of-sync estimate for a graph file (JSON).
    Basin {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Graph file (see README for the format).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refine, classify, and certify one (graph, state) pair (JSON). Exits 0
    /// when certificates and spectral classification agree.
    Certify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// State file: whitespace-separated phases in radians.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Feasible (rho1, |rho2|) region for stable equilibria at a given
    /// connectivity (JSON summary, optional CSV point cloud).
    RegionScan {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        mu_tilde: Option<f64>,
        #[arg(long)]
        grid_step: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the full rho1,rho2_abs,feasible point cloud here.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

fn write_output(path: Option<&PathBuf>, bytes: &[u8]) -> Result<(), HarnessError> {
    match path {
        Some(p) => {
            let mut f = std::fs::File::create(p)?;
            f.write_all(bytes)?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<Vec<u8>, HarnessError> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| HarnessError::Numeric(format!("serialization failed: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        Command::Figure1 { config, n_min, n_max, budget, out } => {
            let cfg = ExperimentConfig::load_opt(config.as_ref(), ExperimentKind::Figure1)?;
            let (lo, hi) = match cfg.n_range {
                Some(r) => (r.min, r.max),
                None => (n_min, n_max),
            };
            let budget = budget.or(cfg.budget).unwrap_or(DEFAULT_FIGURE1_BUDGET);
            let rows = run_figure1(lo, hi, budget)?;
            let mut bytes = Vec::new();
            write_figure1_csv(&rows, &mut bytes)?;
            write_output(out.as_ref().or(cfg.output_path.as_ref()), &bytes)?;
            Ok(0)
        }
        Command::RazorEdge { config, m_max, trials, seed, out } => {
            let cfg = ExperimentConfig::load_opt(config.as_ref(), ExperimentKind::RazorEdge)?;
            let m_max = cfg.m_max.unwrap_or(m_max);
            let trials = trials.or(cfg.trials).unwrap_or(DEFAULT_TRIALS);
            let seed = seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
            let opts = BasinOptions::with_tolerances(&cfg.tolerances);
            let rows = run_razor_edge(m_max, trials, seed, &opts)?;
            write_output(out.as_ref().or(cfg.output_path.as_ref()), &to_json_pretty(&rows)?)?;
            Ok(0)
        }
        Command::PatternSearch { config, n, budget, out } => {
            let cfg = ExperimentConfig::load_opt(config.as_ref(), ExperimentKind::PatternSearch)?;
            let n = n
                .or(cfg.n)
                .ok_or_else(|| HarnessError::Config("pattern-search needs --n".into()))?;
            let budget = budget.or(cfg.budget).unwrap_or(DEFAULT_PATTERN_BUDGET);
            let res = run_pattern_search(n as usize, budget)?;
            write_output(out.as_ref().or(cfg.output_path.as_ref()), &to_json_pretty(&res)?)?;
            Ok(0)
        }
        Command::Basin { config, graph, trials, seed, out } => {
            let cfg = ExperimentConfig::load_opt(config.as_ref(), ExperimentKind::Basin)?;
            let graph_path = graph
                .or(cfg.graph_file.clone())
                .ok_or_else(|| HarnessError::Config("basin needs --graph".into()))?;
            let g = kuramoto_sync::Graph::read_from_path(&graph_path)
                .map_err(|e| HarnessError::Config(format!("{}: {e}", graph_path.display())))?;
            let trials = trials.or(cfg.trials).unwrap_or(DEFAULT_TRIALS);
            let seed = seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
            let opts = BasinOptions::with_tolerances(&cfg.tolerances);
            let id = graph_path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| graph_path.display().to_string());
            let est = run_basin(&g, &id, trials, seed, &opts);
            write_output(out.as_ref().or(cfg.output_path.as_ref()), &to_json_pretty(&est)?)?;
            Ok(0)
        }
        Command::Certify { config, graph, state, out } => {
            let cfg = ExperimentConfig::load_opt(config.as_ref(), ExperimentKind::Certify)?;
            let graph_path = graph
                .or(cfg.graph_file.clone())
                .ok_or_else(|| HarnessError::Config("certify needs --graph".into()))?;
            let state_path = state
                .or(cfg.state_file.clone())
                .ok_or_else(|| HarnessError::Config("certify needs --state".into()))?;
            let output = run_certify(&graph_path, &state_path, &cfg.tolerances)?;
            let consistent = output.consistent;
            write_output(out.as_ref().or(cfg.output_path.as_ref()), &to_json_pretty(&output)?)?;
            Ok(if consistent { 0 } else { 4 })
        }
        Command::RegionScan { config, mu_tilde, grid_step, out, csv_out } => {
            let cfg = ExperimentConfig::load_opt(config.as_ref(), ExperimentKind::RegionScan)?;
            let mu_tilde = mu_tilde
                .or(cfg.mu_tilde)
                .ok_or_else(|| HarnessError::Config("region-scan needs --mu-tilde".into()))?;
            let grid_step = grid_step.or(cfg.grid_step).unwrap_or(DEFAULT_REGION_GRID_STEP);
            let csv_path = csv_out.or(cfg.csv_output_path.clone());
            let region = run_region_scan(mu_tilde, grid_step, csv_path.as_deref())?;
            write_output(out.as_ref().or(cfg.output_path.as_ref()), &to_json_pretty(&region)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
