use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nbspec::experiments::{self, ColorKind, ColoredConfig, GrowConfig, LawsConfig, LiftConfig, OrderArg};
use nbspec::graph_io::read_graph_file;
use nbspec::manifest::{ExperimentManifest, InputFile};
use nbspec::output::{render, Format};
use nbspec::schedule::Schedule;
use nbspec::{Error, Result};
use serde_json::json;

/// Non-backtracking walk census and spectral convergence experiments on
/// regular graphs.
#[derive(Parser)]
#[command(name = "nbspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for every random stream of the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Monte-Carlo trials per cell.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Largest walk length in census statistics.
    #[arg(long, global = true)]
    rmax: Option<usize>,
    /// Wasserstein order (a number >= 1 or `inf`); repeatable.
    #[arg(long = "p", global = true, value_parser = parse_order)]
    orders: Vec<OrderArg>,
    /// Directory for output files; without it data goes to stdout and the
    /// manifest to stderr.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Exact walk, circuit and circle counts of a regular graph.
    Census { graph: PathBuf },
    /// Distance from random lifts of a base graph to the tree law.
    Lift {
        graph: PathBuf,
        /// Sheet counts N of the lift ladder.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 8, 32, 128])]
        sheets: Vec<usize>,
    },
    /// Distance from uniform random regular graphs of growing degree to the
    /// semicircle.
    Grow {
        /// Vertex counts of the size ladder.
        #[arg(long = "n", value_delimiter = ',', default_values_t = [64, 256, 1024])]
        sizes: Vec<usize>,
        /// `log`, `loglog` or `fixed:Q`.
        #[arg(long, default_value = "log", value_parser = parse_schedule)]
        schedule: Schedule,
    },
    /// Constructive bounds between the reference laws.
    Laws {
        /// Branching values q (> 2).
        #[arg(long = "q", value_delimiter = ',', default_values_t = [5.0, 10.0, 50.0, 200.0])]
        branching: Vec<f64>,
        /// Cycle lengths m (>= 3).
        #[arg(long = "m", value_delimiter = ',', default_values_t = [10, 53, 200])]
        cycles: Vec<usize>,
    },
    /// Spectral measure of a unitary-colored base graph.
    Colored {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: ColorKind,
        /// Block dimension N.
        #[arg(long, default_value_t = 2)]
        sheets: usize,
    },
}

fn parse_order(s: &str) -> std::result::Result<OrderArg, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_schedule(s: &str) -> std::result::Result<Schedule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load(path: &Path) -> Result<(nbspec_core::MultiGraph, InputFile)> {
    let (g, bytes) = read_graph_file(path)?;
    Ok((g, InputFile::new(&path.display().to_string(), &bytes)))
}

fn run(cli: Cli) -> Result<()> {
    let c = &cli.common;
    let orders = if c.orders.is_empty() { vec!["1".parse()?, "2".parse()?] } else { c.orders.clone() };
    let (manifest, report) = match &cli.command {
        Command::Census { graph } => {
            let (g, input) = load(graph)?;
            let r_max = c.rmax.unwrap_or(10);
            let (_, report) = experiments::census(&g, r_max)?;
            (ExperimentManifest::new("census", None, json!({ "r_max": r_max }), vec![input]), report)
        }
        Command::Lift { graph, sheets } => {
            let (g, input) = load(graph)?;
            let cfg = LiftConfig {
                sheets: sheets.clone(),
                trials: c.trials.unwrap_or(50),
                seed: c.seed,
                r_max: c.rmax.unwrap_or(6),
                orders,
            };
            let (_, report) = experiments::lift(&g, &cfg)?;
            (ExperimentManifest::new("lift", Some(c.seed), serde_json::to_value(&cfg)?, vec![input]), report)
        }
        Command::Grow { sizes, schedule } => {
            let cfg = GrowConfig {
                sizes: sizes.clone(),
                schedule: *schedule,
                trials: c.trials.unwrap_or(30),
                seed: c.seed,
                r_max: c.rmax.unwrap_or(4),
                orders,
            };
            let (_, report) = experiments::grow(&cfg)?;
            (ExperimentManifest::new("grow", Some(c.seed), serde_json::to_value(&cfg)?, vec![]), report)
        }
        Command::Laws { branching, cycles } => {
            let cfg = LawsConfig { branching: branching.clone(), cycles: cycles.clone() };
            let (_, report) = experiments::laws(&cfg)?;
            (ExperimentManifest::new("laws", None, serde_json::to_value(&cfg)?, vec![]), report)
        }
        Command::Colored { graph, kind, sheets } => {
            let (g, input) = load(graph)?;
            let cfg = ColoredConfig { kind: *kind, sheets: *sheets, seed: c.seed, r_max: c.rmax.unwrap_or(6), orders };
            let (_, report) = experiments::colored(&g, &cfg)?;
            (ExperimentManifest::new("colored", Some(c.seed), serde_json::to_value(&cfg)?, vec![input]), report)
        }
    };
    let rendered = render(manifest, &report, c.format, c.out.as_deref())?;
    let stdout_path = Path::new("<stdout>");
    std::io::stdout()
        .write_all(rendered.stdout.as_bytes())
        .map_err(|source| Error::Write { path: stdout_path.to_owned(), source })?;
    eprint!("{}", rendered.stderr);
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
