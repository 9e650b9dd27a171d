use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "orthospec",
    version,
    about = "Orthonormal-system expansions, spectral PDE solves and convergence studies"
)]
pub struct Cli {
    /// Directory for output files when no explicit path is given.
    #[arg(long, global = true, env = "ORTHOSPEC_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a built-in function and write its coefficients.
    Expand(ExpandArgs),
    /// Write the pointwise-error curves of one of the reproduced figures.
    Figures(FigureArgs),
    /// Solve a model PDE and write its norm history and final state.
    #[command(subcommand)]
    Pde(PdeCommand),
    /// Tabulate norms of powers of a W-system differentiation matrix.
    Index(IndexArgs),
    /// List the built-in test functions.
    Functions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Mt,
    Hermite,
    Laguerre,
    Ultra,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long, value_enum)]
    pub basis: BasisArg,
    /// Weight parameter for laguerre and ultra.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Truncation order.
    #[arg(long)]
    pub n: usize,
    /// Registry name, or `phiK` for the basis function with index K.
    #[arg(long = "fn")]
    pub function: String,
    /// Gauss nodes (polynomial systems) or FFT length (mt).
    #[arg(long)]
    pub quad_nodes: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    Fig41a,
    Fig41b,
    Fig42a,
    Fig42b,
    All,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub which: FigureArg,
    /// Omit the leading `#` metadata line.
    #[arg(long)]
    pub no_meta: bool,
    /// Output file (single figure only).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PdeCommand {
    /// u_t = u_xx on (-1, 1) with zero Dirichlet data.
    Diffusion(DiffusionArgs),
    /// i u_t = -u_xx/2 + V u on the real line.
    Schrodinger(SchrodingerArgs),
}

#[derive(Debug, Args)]
pub struct DiffusionArgs {
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 48)]
    pub n: usize,
    #[arg(long = "t", default_value_t = 0.1)]
    pub t_final: f64,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Initial condition from the function registry.
    #[arg(long = "fn", default_value = "sin_pi")]
    pub function: String,
    /// Prefix of the two output files.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TBasisArg {
    Mt,
    Hermite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialArg {
    /// V = 0
    Free,
    /// V = x^2/2
    Harmonic,
    /// V = 1/(1+x^2)
    Bump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitialArg {
    /// e^{-(x-1)^2} e^{ix/2}
    Packet,
    /// pi^{-1/4} e^{-x^2/2}
    Ground,
}

#[derive(Debug, Args)]
pub struct SchrodingerArgs {
    #[arg(long, value_enum, default_value = "hermite")]
    pub basis: TBasisArg,
    #[arg(long, value_enum, default_value = "harmonic")]
    pub potential: PotentialArg,
    #[arg(long, value_enum, default_value = "packet")]
    pub initial: InitialArg,
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    #[arg(long = "t", default_value_t = 1.0)]
    pub t_final: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WBasisArg {
    Laguerre,
    Ultra,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long, value_enum)]
    pub basis: WBasisArg,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    pub powers: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "32,64,128,256")]
    pub sizes: Vec<usize>,
    /// Seed of the power-iteration start vectors.
    #[arg(long, default_value_t = orthospec_core::structmat::DEFAULT_NORM_SEED)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
