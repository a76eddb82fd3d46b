use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lincode", version, about = "Weight distributions of linearized-polynomial codes and Wenger graph spectra, cross-checked against brute-force oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Maximum number of enumerated items for oracle methods
    #[arg(long, env = "LINCODE_BUDGET", default_value_t = lincode::DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..), global = true)]
    pub budget: u64,
    /// Worker threads for partitioned enumeration; output does not depend on it
    #[arg(long, env = "LINCODE_WORKERS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..1025), global = true)]
    pub workers: u64,
    /// Write output to FILE instead of stdout
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Primitive modulus as coefficients, low degree first, e.g. 1,1,0,0,1
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u64>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field parameters, chosen modulus and primitivity check
    FieldInfo(FieldArgs),
    /// Weight distribution of the code
    WeightDist {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Adjacency spectrum of the linearized Wenger graph
    WengerSpectrum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Tolerance for the dense eigensolver comparison
        #[arg(long, default_value_t = lincode::wenger::DEFAULT_DENSE_TOL)]
        tol: f64,
    },
    /// Exact sweep of the Gaussian binomial identity
    VerifyConjecture {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7,8,9")]
        q: Vec<u64>,
        #[arg(long, default_value_t = 8)]
        u_max: u64,
    },
    /// Möbius, inversion and orthogonal-complement checks on a subspace lattice
    LatticeChecks {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded full-rank experiment for Moore matrices
    MooreRankTest {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Method {
    Formula,
    BruteForce,
    Moebius,
    Counting,
    Dense,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}
