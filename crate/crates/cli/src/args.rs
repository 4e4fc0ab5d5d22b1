use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "repknot",
    version,
    about = "Meridian-traceless SU(2) representations of knots and links"
)]
pub struct Cli {
    /// Emit the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,

    #[arg(long, global = true, value_enum, default_value_t = ToleranceProfile::Default)]
    pub tolerance_profile: ToleranceProfile,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ToleranceProfile {
    Default,
    /// Polish every solve further and allow more iterations.
    Strict,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Diagram notation (`X(...)` terms, `U`, or `BR[n; ...]`) or a bundled
    /// corpus name such as `8_19`.
    #[arg(long)]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 200)]
    pub seeds: usize,
    #[arg(long, default_value_t = 0)]
    pub rng: u64,
    /// Restrict to representations with the distinguished meridian sent to `i`.
    #[arg(long)]
    pub pin_meridian: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinant, signature, Alexander polynomial and congruence checks.
    Invariants(InputArgs),
    /// Binary dihedral classes.
    Dihedral {
        #[command(flatten)]
        input: InputArgs,
        /// Label modulus; defaults to the determinant.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Seeded numerical scan of the traceless representation variety.
    Scan {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Scan, then look for a non-dihedral irreducible representation.
    Simplicity {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Twisted cohomology of a dihedral class or a scanned cluster.
    Cohomology {
        #[command(flatten)]
        input: InputArgs,
        /// Dihedral class index.
        #[arg(long, conflicts_with = "from_scan")]
        class: Option<usize>,
        /// Cluster index of a pinned scan.
        #[arg(long)]
        from_scan: Option<usize>,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Branched double cover homology and the induced SO(3) representation.
    Cover {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, conflicts_with = "from_scan")]
        from_class: Option<usize>,
        #[arg(long)]
        from_scan: Option<usize>,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Full pipeline on one diagram (the scan is always pinned).
    Report {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Summary table over a corpus file (the bundled corpus by default).
    Corpus {
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        scan: ScanArgs,
    },
}
