use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "kgv", version, about = "Exact verification of class-number counts and k(GV) bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest field size for `metacyclic` and `lemmas`, largest |K| for
    /// `section5-scan`.
    #[arg(long, global = true)]
    pub max_q: Option<u64>,
    #[arg(long, default_value_t = kgv_core::brute_force::DEFAULT_CLOSURE_CAP, global = true)]
    pub closure_cap: usize,
    /// Enables the Sp(6,2) and q <= 1024 tiers.
    #[arg(long, global = true)]
    pub extended: bool,
    /// Replaces a stored constant, `KEY=VALUE`.
    #[arg(long = "override", hide = true, global = true)]
    pub overrides: Vec<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Element-count table for small symplectic groups against the printed entries.
    Table,
    /// Element count of one class datum.
    Wall(WallArgs),
    /// Unipotent elements of Sp(2a, r) of a given Jordan type.
    Fg(FgArgs),
    /// d1/d2 orbit counts with a brute-force cross-check.
    Orbits(OrbitArgs),
    /// Exceptional-pair scan, case reports and inequality chains.
    Bounds(BoundArgs),
    /// Scan of the large-dimension estimate over (n, |K|).
    #[command(name = "section5-scan")]
    Section5Scan(ScanArgs),
    /// k(GV) <= |V| for every subgroup G of GammaL(1, q).
    Metacyclic,
    /// Closure and k(GV) for a group given by generator matrices.
    Brute(BruteArgs),
    /// Centralizer, inertia, orbit-count, Nagao and Gallagher checks.
    Lemmas,
}

#[derive(Args, Debug)]
pub struct WallArgs {
    /// Classical group as FAMILY:M:Q, e.g. Sp:2:5 or O+:2:3.
    #[arg(long, default_value = "Sp:1:3")]
    pub group: String,
    /// COEFFS/PARTS[/SIGNS], coefficients constant-first with the leading
    /// 1, e.g. `1,1/1,1` for t+1 with (1,1) or `2,1/2/2+` for t-1.
    #[arg(long = "factor")]
    pub factors: Vec<String>,
    /// JSON datum file: {"group": "Sp:2:5", "factors": [{"poly": [..], "parts": [..], "signs": {"2": "+"}}]}.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Sum over every sign decoration of the t+-1 partitions.
    #[arg(long)]
    pub unsigned: bool,
}

#[derive(Args, Debug)]
pub struct FgArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub r: u64,
    /// Jordan type as comma-separated parts.
    #[arg(long)]
    pub mu: String,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    /// A single prime; all of 2, 3, 5, 7 by default.
    #[arg(long)]
    pub r: Option<u64>,
    /// A single a; every a with r^(2a) <= 2500 by default.
    #[arg(long)]
    pub a: Option<u64>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Only the exceptional-pair scan.
    #[arg(long, conflicts_with_all = ["case", "chain"])]
    pub scan: bool,
    /// Case report for A,R.
    #[arg(long, value_name = "A,R")]
    pub case: Option<String>,
    /// Evaluate the chain for A,R at --qk.
    #[arg(long, value_name = "A,R", requires = "qk")]
    pub chain: Option<String>,
    #[arg(long)]
    pub qk: Option<u64>,
    /// k(G) for chains whose lead term is a class number.
    #[arg(long)]
    pub class_number: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 4096)]
    pub n_max: u64,
}

#[derive(Args, Debug)]
pub struct BruteArgs {
    /// JSON generator file: {"p": 3, "n": 2, "generators": [[[1,1],[0,1]], ...]}.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Compare element censuses of small symplectic groups with the
    /// counting formulas.
    #[arg(long)]
    pub census: bool,
}
