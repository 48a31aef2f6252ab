use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Parser, Debug)]
#[command(name = "edslab", version, about = "Elliptic divisibility sequences against linear recurrences")]
pub struct Cli {
    /// key=value file; flags given on the command line take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Elliptic divisibility sequences
    #[command(subcommand)]
    Eds(EdsCmd),
    /// Linear recurrence sequences
    #[command(subcommand)]
    Lrs(LrsCmd),
    /// Trace/determinant densities
    #[command(subcommand)]
    Density(DensityCmd),
    /// Search for a witness prime and write a certificate
    Refute(RefuteArgs),
    /// Re-check a certificate file
    Verify(VerifyArgs),
    /// Checks of the auxiliary lemmas
    #[command(subcommand)]
    Prooflab(ProofCmd),
    /// List indices n >= N with z_n != +-u_(n^2) mod p
    Falsify(FalsifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    /// A B of y^2 = x^3 + A x + B
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
    pub curve: Vec<BigInt>,
    /// x y z with P = (x/z^2, y/z^3)
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true, required = true)]
    pub point: Vec<BigInt>,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// `lrs k c1..ck u1..uk`
    #[arg(long, conflicts_with = "spec_file")]
    pub spec: Option<String>,
    #[arg(long)]
    pub spec_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum EdsCmd {
    /// Terms z_1..z_N from multiples of P, with c_n = log z_n / n^2
    Gen {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        n: usize,
        /// Cache directory (defaults to $EDSLAB_CACHE_DIR)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Terms from four initial values and the Ward recurrences
    Ward {
        #[arg(long, num_args = 4, value_names = ["W1", "W2", "W3", "W4"], allow_negative_numbers = true)]
        seed: Vec<BigInt>,
        #[arg(long)]
        n: usize,
    },
    /// Minimal period of z_n mod p
    Period {
        #[arg(long, num_args = 2, allow_negative_numbers = true, conflicts_with = "seed", requires = "point")]
        curve: Option<Vec<BigInt>>,
        #[arg(long, num_args = 3, allow_negative_numbers = true, conflicts_with = "seed", requires = "curve")]
        point: Option<Vec<BigInt>>,
        #[arg(long, num_args = 4, allow_negative_numbers = true)]
        seed: Option<Vec<BigInt>>,
        #[arg(long)]
        p: u64,
        /// Largest window searched
        #[arg(long, default_value_t = 1 << 22)]
        horizon: usize,
        /// Use z_(l n) with a Ward seed fitted to the stored prefix
        #[arg(long)]
        stride: Option<usize>,
    },
    /// Primitive prime divisors of z_1..z_N
    Zsigmondy {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        n: usize,
        /// Pollard rho iteration budget per term
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum LrsCmd {
    /// Minimal integer recurrence for a list of terms (one per line)
    Fit {
        #[arg(long)]
        terms: PathBuf,
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
    /// u_n exactly, or mod p
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Recurrence for u_(M n)
    Decimate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: u64,
    },
    /// Root-of-unity ratios of the characteristic roots
    Degenerate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also print the non-degenerate reduction
        #[arg(long)]
        reduce: bool,
    },
    /// Period of u_n mod p and of u_(n^2) mod p
    Period {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum DensityCmd {
    Gl2 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, default_value_t = 31)]
        cap: u64,
    },
    Affine {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, default_value_t = 13)]
        cap: u64,
    },
    Empirical {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        a: u64,
        #[arg(long)]
        x: u64,
        /// Comma-separated primes to skip
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<u64>,
    },
}

#[derive(Args, Debug)]
pub struct RefuteArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub a: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub p_max: u64,
    #[arg(long, default_value_t = 1 << 24)]
    pub max_horizon: usize,
    #[arg(long, value_delimiter = ',')]
    pub exclude: Vec<u64>,
    /// Certificate path
    #[arg(long, default_value = "certificate.json")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub certificate: PathBuf,
}

#[derive(Args, Debug)]
pub struct FalsifyArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// First index examined
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 100)]
    pub window: u64,
}

#[derive(Subcommand, Debug)]
pub enum ProofCmd {
    /// Degree and leading coefficient of Q(X) for P and alpha
    Qlemma {
        /// Coefficients of P, constant term first
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        poly: Vec<String>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: String,
    },
    /// det[beta_j^u - 1] against the product formula over F_q
    Det {
        #[arg(long)]
        q: u64,
        #[arg(long, num_args = 1..)]
        betas: Vec<u64>,
        /// Check every admissible tuple of this length instead
        #[arg(long)]
        all: Option<usize>,
    },
    /// I_r: residues n with n^2 + j c a square mod r for j = 1..t
    Resclass {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        c: i64,
    },
    /// l with 2 l n0 + c l^2 = j mod r^e
    Ell {
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, allow_negative_numbers = true)]
        n0: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        j: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        c: BigInt,
    },
    /// Eigenvalue-1 eigenvectors of a row-stochastic matrix (one row per line)
    Fixedpoint {
        #[arg(long)]
        matrix: PathBuf,
    },
}
