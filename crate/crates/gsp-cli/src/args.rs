//! Command-line surface.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "gsp", version, about = "Graph signal processing toolbox")]
pub struct Cli {
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output format of data files.
    #[arg(long, global = true, value_enum, default_value_t = FileFormat::Csv)]
    pub format: FileFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    Adjacency,
    NormalizedAdjacency,
    Laplacian,
    NormalizedLaplacian,
    RandomWalk,
    Grw,
    IsometricSvd,
}

impl OperatorArg {
    pub fn kind(&self) -> gsp::OperatorKind {
        match self {
            OperatorArg::Adjacency => gsp::OperatorKind::Adjacency,
            OperatorArg::NormalizedAdjacency => gsp::OperatorKind::NormalizedAdjacency,
            OperatorArg::Laplacian => gsp::OperatorKind::Laplacian,
            OperatorArg::NormalizedLaplacian => gsp::OperatorKind::NormalizedLaplacian,
            OperatorArg::RandomWalk => gsp::OperatorKind::RandomWalk,
            OperatorArg::Grw => gsp::OperatorKind::Grw,
            OperatorArg::IsometricSvd => gsp::OperatorKind::IsometricSvd,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a graph or export one of its operator matrices.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Graph Fourier transform of a signal: writes `k,lambda,X` rows.
    Spectrum {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, value_enum, default_value_t = OperatorArg::Laplacian)]
        operator: OperatorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Design or apply polynomial graph filters.
    Filter {
        #[command(subcommand)]
        action: FilterAction,
    },
    /// Quadratic-objective denoising in the Laplacian spectral domain.
    Denoise {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Mixed smoothness term weight (combined variant).
        #[arg(long, conflicts_with = "quadratic")]
        beta: Option<f64>,
        /// Penalize deviation from a linear form instead of roughness.
        #[arg(long)]
        quadratic: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-step alpha/beta smoothing iterations.
    Taubin {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        iters: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-channel filter bank on bipartite graphs.
    Fbank {
        #[command(subcommand)]
        action: FbankAction,
    },
    /// Compressive sampling and sparse recovery.
    Cs {
        #[command(subcommand)]
        action: CsAction,
    },
    /// Stationary graph signal generation and spectral estimation.
    Gwss {
        #[command(subcommand)]
        action: GwssAction,
    },
    /// Localized graph Fourier transform.
    Lgft {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        /// Window spec: `spectral:tau=3[,amplitude=1]`, `vertex:hann,D=5`,
        /// or `bands:hann|meyer|binomial,K=25[,cheb=20]`.
        #[arg(long)]
        windows: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Spectral graph wavelet transform.
    Sgwt {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        progression: f64,
        #[arg(long, default_value_t = 9)]
        scales: usize,
        /// Chebyshev order for the vertex-domain path (exact when absent).
        #[arg(long)]
        cheb: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Vertex-frequency energy distributions.
    Vfd {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, value_enum, default_value_t = VfdKind::Energy)]
        kind: VfdKind,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Global and local smoothness indices.
    Smoothness {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GraphAction {
    /// Vertex/edge counts and connectivity.
    Info {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Export a dense operator matrix.
    Operator {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = OperatorArg::Laplacian)]
        operator: OperatorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FilterAction {
    /// Fit taps to a desired sampled response by interpolation or least
    /// squares.
    Design {
        #[arg(long)]
        response: PathBuf,
        /// Eigenvalue list file (alternative to --graph).
        #[arg(long, conflicts_with = "graph")]
        lambdas: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OperatorArg::Adjacency)]
        operator: OperatorArg,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        mode: DesignModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply taps to a signal with iterated shift products.
    Apply {
        #[arg(long)]
        taps: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, value_enum, default_value_t = OperatorArg::Adjacency)]
        operator: OperatorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignModeArg {
    Ls,
    Exact,
}

#[derive(Subcommand, Debug)]
pub enum FbankAction {
    /// Analyze and resynthesize a signal; reports channel energies and the
    /// reconstruction error.
    Roundtrip {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, value_enum, default_value_t = QmfKindArg::Sqrt)]
        kind: QmfKindArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QmfKindArg {
    Sqrt,
    Cos,
}

#[derive(Subcommand, Debug)]
pub enum CsAction {
    /// Greedy sparse recovery from vertex samples.
    Recover {
        #[arg(long)]
        graph: PathBuf,
        /// Samples CSV `vertex,value`.
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        sparsity: Option<usize>,
        /// Residual stopping bound (defaults to 1e-6 times the sample norm).
        #[arg(long)]
        epsilon: Option<f64>,
        /// Correlate with raw (un-normalized) columns during atom selection.
        #[arg(long)]
        raw_correlation: bool,
        #[arg(long, value_enum, default_value_t = OperatorArg::Laplacian)]
        operator: OperatorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GwssAction {
    /// Generate seeded realizations of a filtered white process.
    Generate {
        #[arg(long)]
        taps: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = OperatorArg::Adjacency)]
        operator: OperatorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Periodogram of stored realizations.
    Psd {
        #[arg(long)]
        realizations: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = OperatorArg::Adjacency)]
        operator: OperatorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VfdKind {
    Energy,
    Rid,
}
