use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, false).map_err(|_| format!("unknown format {s:?}"))
    }
}

/// Explicit zero-repulsion calculator and certificate checker.
#[derive(Debug, Parser)]
#[command(name = "deuring", version)]
pub struct Cli {
    /// Output format [default: table]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Working precision in bits [default: $DEURING_PRECISION, else 80]
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(8..=4096))]
    pub precision: Option<u32>,

    /// Worker threads for internal parallelism
    #[arg(long, global = true, value_parser = clap::value_parser!(usize))]
    pub threads: Option<usize>,

    /// Flat `key = value` file with defaults for the global options
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character table modulo q
    Chars(CharsArgs),
    /// Selberg weights for an exceptional character
    Sieve(SieveArgs),
    /// Mollified detector sum at a point next to its bound
    Detect(DetectArgs),
    /// Run the certificate suite
    Verify(VerifyArgs),
    /// Repulsion bound for zeros near an exceptional zero
    Bound(BoundArgs),
    /// List registered certificates
    CertsList,
}

#[derive(Debug, Args)]
pub struct CharsArgs {
    #[arg(long)]
    pub modulus: u64,
    /// Only real non-principal characters
    #[arg(long)]
    pub real_only: bool,
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    #[arg(long)]
    pub q: u64,
    /// Index of the exceptional character in the `chars` listing
    #[arg(long)]
    pub chi1: usize,
    /// Sifting level
    #[arg(long = "R")]
    pub r: u64,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long)]
    pub q: u64,
    /// Index of the twisting character in the `chars` listing
    #[arg(long)]
    pub chi: usize,
    /// Point as `RE,IM`
    #[arg(long, allow_hyphen_values = true)]
    pub rho: String,
    /// Detector length
    #[arg(long = "N")]
    pub n: u64,
    /// Exceptional character index [default: first real non-principal]
    #[arg(long)]
    pub chi1: Option<usize>,
    /// Sifting level
    #[arg(long = "R", default_value_t = 200)]
    pub r: u64,
    /// Exceptional zero [default: edge of the classical zero-free region]
    #[arg(long)]
    pub beta1: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only this certificate
    #[arg(long)]
    pub cert: Option<String>,
    /// Record wall-clock seconds per certificate
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long = "T")]
    pub t: f64,
    /// Exceptional zero as a decimal or fraction
    #[arg(long)]
    pub beta1: String,
    /// Comma-separated presets [default: convexity,bordignon]
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long = "A")]
    pub a: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long = "B")]
    pub b: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    /// Corollary constants `c1,c2,c3,c4`
    #[arg(long)]
    pub corollary: Option<String>,
    /// Report instead of failing when beta1 is outside the window
    #[arg(long)]
    pub allow_window_violation: bool,
}
