use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

mod commands;
mod output;

#[derive(Parser)]
#[command(name = "qlat", version, about = "Ramsey problems on Boolean lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Work limit: search steps, scanned colorings or annealing moves
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Worker threads (1 runs sequentially)
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Write the JSON result here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Write a run record (parameters, timing, result digest) here
    #[arg(long, global = true, value_name = "PATH")]
    pub record: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Number of embeddings Q_n -> Q_N, or antichains of Q_n
    Count(CountArgs),
    /// List embeddings Q_n -> Q_N in good-sequence order
    Enumerate(EnumerateArgs),
    /// Search a coloring for a monochromatic structure
    Detect(DetectArgs),
    /// Check a coloring file, optionally for monochromatic Q_n
    VerifyColoring(VerifyArgs),
    /// Run a constructive strategy
    #[command(subcommand)]
    Strategy(StrategyCommand),
    /// Exhaustive Ramsey numbers and witness search
    #[command(subcommand)]
    Ramsey(RamseyCommand),
    /// Same as `ramsey witness`
    Witness(WitnessArgs),
    /// Symmetric chain partition of 2^[N]
    Chains(ChainsArgs),
    /// Boolean algebras in a family or a layered coloring
    Algebra(AlgebraArgs),
    /// Lubell mass of a family or of each color class
    Lubell(LubellArgs),
    /// Success counts of a strategy over random colorings
    Montecarlo(MonteCarloArgs),
    /// Write a coloring file
    GenColoring(GenColoringArgs),
}

#[derive(Args)]
pub struct CountArgs {
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Print the sandwich bounds with the exact value
    #[arg(long)]
    pub bounds: bool,
    /// Count antichains of Q_n instead
    #[arg(long, value_name = "n", conflicts_with_all = ["n", "big_n", "bounds"])]
    pub antichains: Option<usize>,
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long = "N")]
    pub big_n: usize,
    /// Stop with a resource-limit error past this many
    #[arg(long, default_value_t = 100_000)]
    pub limit: u64,
    /// One embedding per image family
    #[arg(long)]
    pub copies: bool,
}

#[derive(Args)]
pub struct DetectArgs {
    /// Coloring file
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Monochromatic Q_n
    #[arg(long, value_name = "n")]
    pub qn: Option<usize>,
    /// Monochromatic copy of a poset (file, or Q<n>, C<n>, A<n>)
    #[arg(long, value_name = "POSET")]
    pub poset: Option<String>,
    /// n-subset on which the coloring is layered
    #[arg(long, value_name = "n")]
    pub layered: Option<usize>,
    /// Monochromatic Hilbert cube of this dimension in --colors
    #[arg(long, value_name = "n")]
    pub hilbert: Option<usize>,
    /// Colors of 1..M, comma separated
    #[arg(long, value_delimiter = ',')]
    pub colors: Vec<u8>,
    /// Restrict to one color (default: every color)
    #[arg(long)]
    pub color: Option<u8>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Fail (exit 1) if any monochromatic copy of Q_n exists
    #[arg(long = "no-mono-q", value_name = "n")]
    pub no_mono_q: Option<usize>,
}

#[derive(Subcommand)]
pub enum StrategyCommand {
    /// Monochromatic Q_n in a coloring of Q_{n^2+2n}
    Qnqn(StrategyArgs),
    /// Red Q_2 or blue Q_n in a coloring of Q_{2n+2}
    Q2qn(StrategyArgs),
    /// Red Q_n from half-slices in Q_{n+(n+1)m}
    Halfslice(HalfsliceArgs),
    /// Blue Q_{N-l} avoiding the red cells (l = red height)
    Antichain(FileArgs),
    /// Copy of P x Q_m in Q_{dim2(P)+h(P)m}
    Blob(BlobArgs),
}

#[derive(Args)]
pub struct FileArgs {
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Args)]
pub struct StrategyArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long = "n")]
    pub n: usize,
}

#[derive(Args)]
pub struct HalfsliceArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long = "m")]
    pub m: usize,
}

#[derive(Args)]
pub struct BlobArgs {
    #[arg(long = "p", value_name = "POSET")]
    pub p: String,
    #[arg(long = "m")]
    pub m: usize,
}

#[derive(Subcommand)]
pub enum RamseyCommand {
    /// Least N with every coloring of Q_N containing red P or blue Q
    Exact(ExactArgs),
    /// Annealing search for a coloring of Q_N without monochromatic Q_n
    Witness(WitnessArgs),
    /// k-color Ramsey number of P
    Multicolor(MulticolorArgs),
}

#[derive(Args)]
pub struct ExactArgs {
    #[arg(long = "p", value_name = "POSET")]
    pub p: String,
    #[arg(long = "q", value_name = "POSET")]
    pub q: String,
    #[arg(long)]
    pub nmax: usize,
    /// Scan every coloring, without fixing the color of the empty set
    #[arg(long)]
    pub no_symmetry: bool,
    /// Progress file for resuming interrupted scans
    #[arg(long, value_name = "PATH")]
    pub checkpoint: Option<PathBuf>,
    /// Write the per-N verdicts here
    #[arg(long, value_name = "PATH")]
    pub verdicts: Option<PathBuf>,
}

#[derive(Args)]
pub struct WitnessArgs {
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long = "n")]
    pub n: usize,
    /// Drop the restriction to colorings with c([N] \ S) != c(S)
    #[arg(long = "no-symmetric")]
    pub no_symmetric: bool,
    /// Annealing parameters (JSON); flags override it
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct MulticolorArgs {
    #[arg(long = "p", value_name = "POSET")]
    pub p: String,
    #[arg(long = "k")]
    pub k: usize,
    #[arg(long)]
    pub nmax: usize,
    /// Certified lower bound only
    #[arg(long)]
    pub lower: bool,
}

#[derive(Args)]
pub struct ChainsArgs {
    #[arg(long = "N")]
    pub big_n: usize,
}

#[derive(Args)]
pub struct AlgebraArgs {
    /// Family file {"N": .., "family": [masks]}
    #[arg(long, conflicts_with = "layered")]
    pub family: Option<PathBuf>,
    /// Coloring file layered on [N]
    #[arg(long)]
    pub layered: Option<PathBuf>,
    #[arg(long = "n")]
    pub n: usize,
}

#[derive(Args)]
pub struct LubellArgs {
    /// Family file {"N": .., "family": [masks]}
    #[arg(long, conflicts_with = "file")]
    pub family: Option<PathBuf>,
    /// Coloring file; reports every color class
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum StrategyKind {
    Qnqn,
    Q2qn,
    Halfslice,
}

#[derive(Args)]
pub struct MonteCarloArgs {
    #[arg(long, value_enum)]
    pub strategy: StrategyKind,
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long = "m", default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
}

#[derive(Args)]
pub struct GenColoringArgs {
    /// Uniform random 2-coloring of Q_N
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long = "k", default_value_t = 2)]
    pub k: usize,
    /// Layer colors, comma separated (layered coloring of Q_{len-1})
    #[arg(long, value_delimiter = ',')]
    pub layers: Vec<u8>,
    /// Chain coloring of Q_{N-1} without monochromatic A_n
    #[arg(long, value_name = "n")]
    pub antichain: Option<usize>,
    /// Layered k-coloring of Q_{k-1}, one color per layer
    #[arg(long, value_name = "k")]
    pub multicolor: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Core(qlat::Error),
    Io(String),
    /// A check ran to completion and failed.
    Check(String),
}

impl From<qlat::Error> for CliError {
    fn from(e: qlat::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Io(_) => 2,
            CliError::Core(qlat::Error::ResourceLimit { .. } | qlat::Error::Undecided(_)) => 3,
            CliError::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) | CliError::Check(e) => write!(f, "{e}"),
        }
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Count(_) => "count",
        Command::Enumerate(_) => "enumerate",
        Command::Detect(_) => "detect",
        Command::VerifyColoring(_) => "verify-coloring",
        Command::Strategy(_) => "strategy",
        Command::Ramsey(_) => "ramsey",
        Command::Witness(_) => "witness",
        Command::Chains(_) => "chains",
        Command::Algebra(_) => "algebra",
        Command::Lubell(_) => "lubell",
        Command::Montecarlo(_) => "montecarlo",
        Command::GenColoring(_) => "gen-coloring",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(64)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let started = Instant::now();
    let global = cli.global.clone();
    let run = || commands::run(&cli.command, &global);
    let result = match global.workers {
        Some(w) if w > 1 => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(CliError::Io(format!("thread pool: {e}"))),
        },
        _ => run(),
    };
    let (text, code) = match result {
        Ok(done) => (Some(done.text), done.code),
        Err(e) => {
            eprintln!("error: {e}");
            (None, e.exit_code())
        }
    };
    if let Some(text) = &text {
        if let Err(e) = output::emit(text, global.out.as_deref()) {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    }
    if let Some(path) = &global.record {
        let record = output::RunRecord {
            subcommand: subcommand_name(&cli.command).to_string(),
            parameters: std::env::args().skip(1).collect(),
            seed: global.seed,
            versions: json!({ "qlat": env!("CARGO_PKG_VERSION") }),
            wall_time_ms: started.elapsed().as_millis(),
            digest: output::digest(text.as_deref().unwrap_or("")),
        };
        let body = output::canonical(&output::to_value(&record));
        if let Err(e) = std::fs::write(path, format!("{body}\n")) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
