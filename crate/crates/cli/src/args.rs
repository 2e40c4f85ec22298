use clap::{Args, Parser, Subcommand, ValueEnum};
use wreathmac::partitions::Partition;

#[derive(Parser, Debug)]
#[command(
    name = "wreathmac",
    version,
    about = "Exact wreath Macdonald computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Worker threads (0 = all cores, 1 = sequential).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,

    /// Apply h^2 = t1*t2 to printed values.
    #[arg(long, global = true)]
    pub geometric: bool,

    /// Cyclic offset between quotient components and colours.
    #[arg(long, default_value_t = 0, global = true)]
    pub rotate: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    P,
    Schur,
    Vecschur,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Cauchy,
    Orthogonality,
    Classical,
    Abrr,
    Derivation,
    EvalAll,
    Axioms,
    Vertex,
    SyntheticFail,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Pairing,
    Specialization,
    Both,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Modulus l >= 1.
    #[arg(long)]
    pub l: usize,

    /// Partition as comma-separated parts; "" for the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Partition,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for H_lambda.
    Hpoly {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "vecschur")]
        basis: BasisArg,
    },
    /// Norm N_lambda from the product formula.
    Norm {
        #[command(flatten)]
        target: Target,
    },
    /// Capped vertex value for an empty-core partition.
    Vertex {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "both")]
        route: RouteArg,
        /// Value bound to w.
        #[arg(long, conflicts_with = "z")]
        w: Option<String>,
        /// Comma-separated z_0,...,z_{l-1}; their product is bound to w.
        #[arg(long)]
        z: Option<String>,
    },
    /// Evaluation formula at residue m: both sides.
    Eval {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: usize,
    },
    /// Run one verification check.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        l: usize,
        /// Degree bound D (quotient size for partition-indexed checks).
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Residue for the classical check.
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Core for the Cauchy checks.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        core: Partition,
        /// Partition for the vertex check.
        #[arg(long)]
        lambda: Option<Partition>,
    },
    /// Run a manifest of commands, one per line.
    Batch { manifest: std::path::PathBuf },
}
