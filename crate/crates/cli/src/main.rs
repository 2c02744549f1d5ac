//! `extremal`: build, certify and probe symmetric ±1 matrices and the graphs
//! derived from them.
//!
//! Exit codes: 0 success, 2 invalid input, 3 certification failure or
//! property violation, 4 search budget exhausted, 64 unknown subcommand.

mod commands;
mod manifest;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Certification(String),
    #[error("node budget exhausted after {nodes} expansions")]
    Budget { nodes: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io { .. } => 2,
            CliError::Certification(_) => 3,
            CliError::Budget { .. } => 4,
        }
    }

    pub fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "extremal", version, about = "Symmetric ±1 matrices with few singular values and extremal graph eigenvalues")]
pub struct Cli {
    /// Seed for every random choice (property-lab samples).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a member of S_{s²} from s Hadamard rows and a symmetric Latin
    /// square: thkhn (back-circulant, zero rowsums), thj (constant diagonal,
    /// all-ones eigenvector) or thj1 (back-circulant, rowsums −n).
    Construct(ConstructArgs),
    /// Decide membership in S_k: k·B³ = n²·B with the forced inertia.
    Certify(CertifyArgs),
    /// Eigenvalues, singular values and Ky Fan norms of a PMM or ADJ file.
    Spectrum(SpectrumArgs),
    /// Turn a ±1 matrix into a graph (½(±B⊗J_t + J)), double it (K⊗B), or
    /// blow up a graph.
    Graph(GraphArgs),
    /// Extremal graph families with their claimed eigenvalue values checked:
    /// thp (λ*_{s²+1} = nt/2), thng (Nordhaus-Gaddum pair), thck / thck1
    /// (Ky Fan s²-norm), kyfan-hadamard (Ky Fan bound attained), thmx.
    ConstructGraph(ConstructGraphArgs),
    /// Closed-form bounds on the limits c_k, c_{−k}, c*_k, Nordhaus-Gaddum
    /// and Ky Fan functions, or a bracket table.
    Bounds(BoundsArgs),
    /// Pruned exhaustive search for members of S_k at one order.
    Search(SearchArgs),
    /// Brute-force inequality checks over all small graphs and random graphs.
    Lab(LabArgs),
    /// Print a symmetric Latin square.
    Latin(LatinArgs),
    /// Write a symmetric Hadamard matrix (Sylvester or Paley II, prime q).
    Hadamard(HadamardArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_parser = ["thkhn", "thj", "thj1"])]
    pub family: String,
    #[arg(long)]
    pub s: usize,
    /// Hadamard order; defaults to the smallest catalog order above s.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub k: u64,
    /// Integer identity check (default).
    #[arg(long, conflicts_with = "float")]
    pub exact: bool,
    /// Eigensolver-based check.
    #[arg(long)]
    pub float: bool,
    pub file: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub file: PathBuf,
    /// Ky Fan norms to include.
    #[arg(long = "ky-fan")]
    pub ky_fan: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// ±1 matrix to transform.
    #[arg(long, requires = "transform", conflicts_with = "input")]
    pub from: Option<PathBuf>,
    #[arg(long, value_parser = ["half-shift", "double"])]
    pub transform: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Sign applied to B; defaults to the one that puts −1 on the diagonal.
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    #[arg(long = "zero-diag", default_value = "auto")]
    pub zero_diag: String,
    #[arg(long, value_parser = ["open", "closed"], requires = "input")]
    pub blowup: Option<String>,
    /// Graph to blow up.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConstructGraphArgs {
    #[arg(long, value_parser = ["thp", "thng", "thck", "thck1", "kyfan-hadamard", "thmx"])]
    pub family: String,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Member of S_k used by thck1 and thmx (optional for thng).
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// Regular symmetric Hadamard matrix for kyfan-hadamard (default J_4 − 2I).
    #[arg(long)]
    pub hadamard: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, conflicts_with = "table", required_unless_present = "table")]
    pub name: Option<String>,
    #[arg(long, required_unless_present = "table")]
    pub k: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_parser = ["ck", "ckstar", "ng", "kyfan"], requires = "k_max")]
    pub table: Option<String>,
    #[arg(long = "k-max")]
    pub k_max: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// File holding a resume token from an earlier run.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Where to write the resume token if the budget runs out.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long = "no-symmetry")]
    pub no_symmetry: bool,
}

#[derive(Debug, Args)]
pub struct LabArgs {
    #[arg(long, value_parser = ["lob", "weyl", "th1_spro", "ng_kyfan", "all"])]
    pub property: String,
    #[arg(long = "n-max", default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct LatinArgs {
    #[arg(long, value_parser = ["back-circulant", "const-diag"], default_value = "back-circulant")]
    pub kind: String,
    #[arg(long)]
    pub s: usize,
}

#[derive(Debug, Args)]
pub struct HadamardArgs {
    #[arg(long, conflicts_with = "paley", required_unless_present = "paley")]
    pub sylvester: Option<u32>,
    #[arg(long)]
    pub paley: Option<u64>,
    #[arg(long)]
    pub normalize: bool,
    #[arg(long)]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 2,
                ErrorKind::InvalidSubcommand => 64,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
