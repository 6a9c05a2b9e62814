use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qperm", version, about = "Complex Hadamard matrices and their quantum permutation groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Numerical tolerance for floating-point checks.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A matrix from a `.but`/`.cmat` file or from the built-in catalog.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct MatrixSource {
    /// Matrix file in `.but` or `.cmat` format.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Catalog entry, e.g. `fourier:5`, `fourier:2x3`, `haagerup:root:1/4`.
    #[arg(long)]
    pub catalog: Option<String>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct OtherSource {
    /// Second matrix file.
    #[arg(long)]
    pub other_input: Option<PathBuf>,
    /// Second catalog entry.
    #[arg(long)]
    pub other_catalog: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// Classical S_n: all partitions.
    All,
    /// Free S_n^+: noncrossing partitions.
    Nc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    G,
    Direct,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Auto,
    Modular,
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmitArg {
    Json,
    But,
    Cmat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Any,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    O,
    U,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a matrix is complex Hadamard.
    Verify(MatrixArgs),
    /// Dephase: first row and column equal to 1.
    Dephase(EmitMatrixArgs),
    /// Print a catalog matrix.
    Catalog {
        /// Catalog entry, e.g. `fourier:5` or `f6-col:phase:0.3,1`.
        name: String,
        #[arg(long, value_enum, default_value_t = EmitArg::Json)]
        emit: EmitArg,
    },
    /// Level: least l with all entries l-th roots of unity.
    Level(MatrixArgs),
    /// Regularity with a cycle decomposition certificate.
    Regular(MatrixArgs),
    /// Hadamard equivalence of two matrices.
    Equiv {
        #[command(flatten)]
        matrix: MatrixSource,
        #[command(flatten)]
        other: OtherSource,
    },
    /// Enumerate dephased Butson matrices in H_n(l).
    ButsonEnum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
        /// Search-node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Obstruction rules for H_n(l).
    Obstruct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
    },
    /// Existence table for 2 <= n <= nmax, 2 <= l <= lmax.
    Table {
        #[arg(long, default_value_t = 10)]
        nmax: u64,
        #[arg(long, default_value_t = 14)]
        lmax: u64,
    },
    /// Magic unitary P_ij = Proj(H_i / H_j) and its checks.
    Magic(MatrixArgs),
    /// c_k = dim Fix(u^{⊗k}) for k = 0..kmax.
    Invariants(InvariantArgs),
    /// Poincaré series of the invariants.
    Poincare(InvariantArgs),
    /// Whether the magic unitary has commuting entries.
    Commutative(MatrixArgs),
    /// Gram determinant of the partition Gram matrix.
    GramDet {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
    },
    /// Moments of the (truncated) main character.
    CharMoments {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
        /// Truncation: χ_s = u_11 + ... + u_ss.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Weingarten matrix, or one monomial integral with --i/--j.
    Weingarten {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
        /// Row indices, 1-based, comma separated.
        #[arg(long, requires = "j")]
        i: Option<String>,
        /// Column indices, 1-based, comma separated.
        #[arg(long, requires = "i")]
        j: Option<String>,
    },
    /// Even moments of the free Bessel law.
    FreeBessel {
        #[arg(long)]
        kmax: usize,
        /// Rational parameter, e.g. `1` or `1/2`.
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Free hypergeometric moments: closed formula and exact oracle.
    FreeHg {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        kmax: u64,
        /// Also evaluate the exact Weingarten oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Pauli matrix model: magic checks and word expectations.
    PauliCheck {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Words such as `1,1;2,2` (pairs of 1-based indices); repeatable.
        #[arg(long)]
        word: Vec<String>,
    },
    /// Klein-Fourier twist of Pauli and permutation magics.
    KleinCheck {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// The 1-norm of a matrix and the bound n·sqrt(n).
    OneNorm(MatrixArgs),
    /// Monte-Carlo estimates of I_G(k) = E(||U||_1^k)^{1/k}.
    IgEstimate {
        #[arg(long, value_enum, default_value_t = GroupArg::O)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 10000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub source: MatrixSource,
}

#[derive(Args, Debug)]
pub struct EmitMatrixArgs {
    #[command(flatten)]
    pub source: MatrixSource,
    #[arg(long, value_enum, default_value_t = EmitArg::Json)]
    pub emit: EmitArg,
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[command(flatten)]
    pub source: MatrixSource,
    #[arg(long, default_value_t = 3)]
    pub kmax: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    pub backend: BackendArg,
}
