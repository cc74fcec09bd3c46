use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact counts, asymptotics and uniform sampling of incidence matrices.
#[derive(Debug, Parser)]
#[command(name = "incmat", version)]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Record wall-clock runtime in the output metadata.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact counts.
    #[command(subcommand)]
    Count(CountCommand),
    /// CSV table of every nonzero m_kl(n) and their total F(n).
    Table(TableArgs),
    /// Leading-order asymptotic estimates.
    Asym(AsymArgs),
    /// Preorder-pair rejection sampling.
    Sample(SampleArgs),
    /// Run the embedded self-check.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum CountCommand {
    /// F(n), the number of incidence matrices with n ones.
    F(CountFArgs),
    /// m_kl(n), the number of k×l incidence matrices with n ones.
    M(CountMArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FMethod {
    Msum,
    Stirling,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MMethod {
    Mobius,
    Stirling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    F,
    M,
    P,
}

#[derive(Debug, Args)]
pub struct CountFArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "stirling")]
    pub method: FMethod,
    /// Truncation K of the positive series; required by --method positive.
    #[arg(long = "trunc", value_name = "K")]
    pub trunc: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CountMArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long, value_enum, default_value = "mobius")]
    pub method: MMethod,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AsymArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub trials: u64,
    #[arg(long, default_value_t = crate::DEFAULT_SEED)]
    pub seed: u64,
    /// Append accepted matrices to this file in the block text format.
    #[arg(long, value_name = "PATH")]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Corrupt one Stirling table entry before checking.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
