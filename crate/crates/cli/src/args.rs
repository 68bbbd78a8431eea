use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qube", version, about = "Hamiltonian cycles of the hypercube: generation, analysis, verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the binary reflected Gray code of Q_n as a cycle.
    Gray {
        #[arg(long)]
        n: usize,
    },
    /// Enumerate canonical Hamiltonian cycles as JSON lines.
    Enumerate(EnumerateArgs),
    /// Chromatic vector and per-dimension profiles of each cycle in a file.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        /// Only this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Inscribed squares of each cycle in a file.
    Squares {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        first_only: bool,
    },
    /// Check a property over a corpus of cycles.
    Verify(VerifyArgs),
    /// Equi-independence number of a hypercube or a bipartite graph file.
    Equiind(EquiArgs),
    /// Write the pair graph whose independence number is half the
    /// equi-independence number.
    Reduce {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        out: PathBuf,
    },
    /// Equi-independence numbers and pair-graph sizes of Q_3..Q_N, with the
    /// published values alongside.
    Table1 {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Also solve through the pair graph for n up to this value.
        #[arg(long, default_value_t = 6)]
        reduction_max_n: usize,
    },
    /// Whether n * alpha_=(Q_{n-1}) < 2^n forces a square in every cycle of Q_n.
    Pigeonhole {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Table::Computed)]
        table: Table,
    },
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Prune::All)]
    pub prune: Prune,
    #[arg(long)]
    pub count_only: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the search-tree prefixes of this many edges to --prefixes-out and stop.
    #[arg(long, requires = "prefixes_out")]
    pub split_depth: Option<usize>,
    #[arg(long)]
    pub prefixes_out: Option<PathBuf>,
    /// Only search below the prefixes listed in this file.
    #[arg(long, conflicts_with = "split_depth")]
    pub from_prefixes: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Prune {
    All,
    None,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub property: Property,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, requires = "sample")]
    pub seed: Option<u64>,
    /// Threshold used by the `threshold` property.
    #[arg(long, value_enum, default_value_t = Mode::Equi)]
    pub mode: Mode,
    /// Source of alpha_= values for `--mode equi`.
    #[arg(long, value_enum, default_value_t = Table::Computed)]
    pub table: Table,
    /// Where square-free cycles are written if any are found.
    #[arg(long, default_value = "square_free.jsonl")]
    pub persist: PathBuf,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CorpusArgs {
    #[arg(long)]
    pub exhaustive: bool,
    /// Number of sampled cycles; needs --seed.
    #[arg(long, requires = "seed")]
    pub sample: Option<usize>,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Balance,
    Segments,
    Squares,
    Chromatic,
    Isomorphism,
    Threshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Independence,
    Equi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Computed,
    Published,
}

#[derive(Debug, Args)]
pub struct EquiArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    pub method: Method,
    /// Refuse inputs whose searched graph has more vertices than this.
    #[arg(long, default_value_t = qube_core::mis::DEFAULT_SIZE_LIMIT)]
    pub size_limit: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    #[arg(long)]
    pub hypercube: Option<usize>,
    /// Bipartite graph in `p bipartite` text format.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Reduction,
    Direct,
    Oracle,
}
