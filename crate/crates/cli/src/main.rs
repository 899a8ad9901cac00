mod cache;
mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cocycle-lab", version, about = "Finite-group cohomology, dual cocycles and fusion-ring diagnostics")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Order bound for scans, subgroup enumeration and H² computations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_order: Option<u64>,
    /// Search budget (candidate count, return steps).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cache directory.
    #[arg(long, global = true, env = "COCYCLE_LAB_CACHE", default_value = ".cocycle-cache")]
    pub cache: PathBuf,
    /// Bypass the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Inspect a group; `--dump` prints it in the group file format.
    Group {
        #[arg(long)]
        group: String,
        #[arg(long)]
        dump: bool,
    },
    /// H²(G; T) invariants, or the class of a cocycle file.
    H2 {
        #[arg(long, required_unless_present = "cocycle")]
        group: Option<String>,
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Central-type test over one group or the catalog.
    ScanCtfg {
        #[arg(long)]
        group: Option<String>,
    },
    /// Classes of dual cocycles: pairs (H, class) up to conjugation.
    DualH2 {
        #[arg(long)]
        group: String,
    },
    /// The τ map on an action file, or on a random instance.
    Tau {
        #[arg(long)]
        action: Option<PathBuf>,
        /// Index of the K-invariant form (default: last, nondegenerate first).
        #[arg(long)]
        form: Option<usize>,
    },
    /// Search for a pair of non-isomorphic groups with equivalent module data.
    Pair {
        /// Write the two groups and the action to this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Slice span of the R-matrix of a dual cocycle.
    Slices {
        #[arg(long)]
        group: String,
        /// Index into the H² transversal.
        #[arg(long, default_value_t = 0)]
        class: usize,
    },
    /// Character table with exact values.
    Chartab {
        #[arg(long)]
        group: String,
    },
    /// Fusion ring of a group, optionally compared with another group.
    Fusion {
        #[arg(long)]
        group: String,
        #[arg(long)]
        compare: Option<String>,
    },
    /// Amenability diagnostics for a measure on a fusion ring.
    Amen {
        /// `su2:BOUND` or a group reference.
        #[arg(long, default_value = "su2:200")]
        ring: String,
        /// Measure as `label:weight` terms, e.g. `1:1/2,2:1/2`.
        #[arg(long, default_value = "1:1")]
        measure: String,
        /// Truncation sizes for the norm sweep.
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
        truncations: Vec<usize>,
    },
    /// H²(Z^r × finite; T) for a finitely generated abelian group.
    CenterH2 {
        #[arg(long, default_value_t = 0)]
        rank: usize,
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u64>,
    },
}

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Usage(String),
}

impl From<cocycle_lab::Error> for Failure {
    fn from(e: cocycle_lab::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cache::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
