//! `triwidth`: batch front end over triwidth-core. Every run prints one JSON
//! document; failures print `{"error": {"kind", "message"}}` and exit 1.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "triwidth", version, about = "Treewidth-based algorithms on triangulations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Step budget for searches and the logic evaluator.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for randomised choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance for floating comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Force the brute-force (or logic) backend.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Tree decomposition file to use instead of the min-fill heuristic.
    #[arg(long, global = true)]
    pub td: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, f-vector, closedness and dual-graph degrees.
    Info { input: PathBuf },
    /// Faces of each dimension with their simplex instances.
    Faces {
        input: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Dual graph: one node per simplex, one arc per gluing.
    Dual { input: PathBuf },
    /// Coloured Hasse diagram.
    Hasse { input: PathBuf },
    /// Tree decompositions.
    Tw {
        #[command(subcommand)]
        action: TwAction,
    },
    /// Simple-graph encoding of an edge-coloured graph.
    Encode { input: PathBuf },
    /// Evaluate a logic formula on a graph or triangulation.
    Mso {
        #[command(subcommand)]
        action: MsoAction,
    },
    /// Decide whether a 3-triangulation has a taut angle structure.
    Taut { input: PathBuf },
    /// Optimal Morse matching on the Hasse diagram.
    Morse {
        input: PathBuf,
        /// Solve the logic encoding with the reference evaluator instead.
        #[arg(long, conflicts_with = "oracle")]
        encoding: bool,
    },
    /// Turaev-Viro state sum of a closed 3-triangulation.
    Tv {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// JSON constant table; the built-in r = 3 table otherwise.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Unit weights: count admissible colourings exactly.
        #[arg(long, conflicts_with = "table")]
        unit: bool,
        /// Run both backends and require agreement within `--tol`.
        #[arg(long)]
        verify: bool,
    },
    /// Cone one simplex over a new interior vertex.
    Subdivide {
        input: PathBuf,
        /// Simplex to subdivide; chosen with `--seed` when absent.
        #[arg(long)]
        simplex: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TwAction {
    /// Check `--td` against the graph (or the dual graph of a triangulation).
    Check { input: PathBuf },
    /// Build a decomposition.
    Make {
        input: PathBuf,
        /// Exact treewidth by elimination-order search (small graphs only).
        #[arg(long)]
        exact: bool,
    },
    /// Carry a decomposition of a coloured graph to its simple encoding.
    LiftEncoded { input: PathBuf },
    /// Carry a decomposition of the dual graph to the Hasse diagram.
    LiftHasse { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MsoAction {
    /// Truth of a sentence, or solutions of a formula with free variables.
    Check { structure: PathBuf, formula: PathBuf },
    /// Minimise a linear function of the free set sizes.
    Opt {
        structure: PathBuf,
        formula: PathBuf,
        /// One rational coefficient per free set, comma separated; all 1 by default.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coefficients: Vec<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        constant: String,
        #[arg(long)]
        maximize: bool,
    },
    /// Weighted sum over all satisfying assignments.
    Eval {
        structure: PathBuf,
        formula: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Multiplicative)]
        mode: Mode,
        /// JSON array with one weight array per free set; all 1 by default.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Mode {
    Additive,
    Multiplicative,
}

fn run(cli: Cli) -> Result<serde_json::Value, CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| commands::dispatch(&cli.global, cli.command))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim().to_string());
            println!("{}", err.to_json());
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(value) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("JSON output"));
            ExitCode::SUCCESS
        }
        Err(err) => {
            println!("{}", err.to_json());
            ExitCode::from(1)
        }
    }
}
