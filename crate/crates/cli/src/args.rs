use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Verification laboratory for controlled character groups of combinatorial
/// Hopf algebras.
///
/// Exit status: 0 when every check passes, 1 when a check fails (the report
/// carries a witness), 2 on a usage or input error. HOPFCHAR_MAX_DEGREE
/// replaces the compiled degree limits.
#[derive(Debug, Parser)]
#[command(name = "hopfchar", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a CSV table (`-` for stdout).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List generators (or basis monomials) per degree.
    Enumerate {
        #[arg(long)]
        hopf: String,
        #[arg(long)]
        max_degree: u32,
        /// List basis monomials instead of generators.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Check coassociativity, counit and antipode identities exactly.
    Axioms {
        #[arg(long)]
        hopf: String,
        #[arg(long)]
        max_degree: u32,
        /// Elements to check; defaults to the instance's natural scope.
        #[arg(long, value_enum)]
        scope: Option<Scope>,
        #[command(flatten)]
        output: Output,
    },
    /// Weighted ℓ¹ continuity ratios of the coproduct or antipode.
    ControlCheck {
        #[arg(long)]
        hopf: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = OperatorArg::Coproduct)]
        operator: OperatorArg,
        #[arg(long, value_enum, default_value_t = Scope::Generators)]
        scope: Scope,
        #[command(flatten)]
        output: Output,
    },
    /// Fit the elementary-coproduct count e(n) by an affine bound.
    RlbCheck {
        #[arg(long)]
        hopf: String,
        #[arg(long)]
        max_degree: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Test whether reduced coproducts keep a single generator on one side.
    RightHanded {
        #[arg(long)]
        hopf: String,
        #[arg(long)]
        max_degree: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Solve γ' = γ⋆η, γ(0) = ε, for a curve of infinitesimal characters.
    Evolve(EvolveArgs),
    /// Character arithmetic on character files.
    Char {
        #[command(subcommand)]
        op: CharOp,
    },
    /// Truncated B-series of a polynomial vector field.
    Bseries(BseriesArgs),
    /// Truncated P-series of a partitioned polynomial system.
    Pseries(PseriesArgs),
    /// Truncated word series of a word system.
    Wordseries(WordseriesArgs),
    /// Reproduce the non-group example on the binomial algebra.
    Counterexample {
        #[command(flatten)]
        output: Output,
    },
    /// Check the growth-family axioms W1, W2, W3 and cW on a finite grid.
    GrowthCheck {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
        #[arg(long, default_value_t = 64)]
        k2_max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Print the JSON schema of a report.
    Schema {
        #[arg(value_enum)]
        report: SchemaName,
    },
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Infinitesimal character file; values are t-polynomial coefficient
    /// lists (`B = "time-poly"`) or constants.
    #[arg(long, conflicts_with = "seed")]
    pub eta: Option<PathBuf>,
    /// Draw a constant η with generator values in [−1, 1] instead.
    #[arg(long, requires = "hopf")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub hopf: Option<String>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Write the curve γ as a character file.
    #[arg(long)]
    pub emit: Option<PathBuf>,
    /// Evaluate γ at these times.
    #[arg(long, value_delimiter = ',')]
    pub at: Vec<String>,
    /// Compare h_n(t) with e^{(an+b)t}.
    #[arg(long)]
    pub semiregularity: bool,
    #[arg(long, default_value = "pow")]
    pub family: String,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0)]
    pub b: f64,
    #[arg(long, value_delimiter = ',', default_value = "1/4,1/2,1")]
    pub samples: Vec<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum CharOp {
    /// φ⋆ψ.
    Conv { left: PathBuf, right: PathBuf, #[command(flatten)] output: Output },
    /// φ∘S.
    Inv { input: PathBuf, #[command(flatten)] output: Output },
    /// exp of an infinitesimal character.
    Exp { input: PathBuf, #[command(flatten)] output: Output },
    /// log of a character.
    Log { input: PathBuf, #[command(flatten)] output: Output },
    /// Finite-degree ℓ∞ₖ norm.
    Norm {
        input: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Over::Generators)]
        over: Over,
        /// Treat the file as an infinitesimal character.
        #[arg(long)]
        infinitesimal: bool,
        #[command(flatten)]
        output: Output,
    },
    /// A seeded random rational character file with values in [−1, 1].
    Random {
        #[arg(long)]
        hopf: String,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct BseriesArgs {
    /// Vector field file `{dim, components}`.
    #[arg(long)]
    pub field: PathBuf,
    /// Base point, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub y: Vec<String>,
    #[arg(long, default_value = "1")]
    pub h: String,
    #[arg(long)]
    pub max_order: u32,
    #[arg(long, value_enum, default_value_t = Coefficients::ExactFlow)]
    pub coefficients: Coefficients,
    /// Take coefficients from a rational character file on `ck`.
    #[arg(long, conflicts_with = "coefficients")]
    pub character: Option<PathBuf>,
    /// Run the convergence probe over these step sizes instead.
    #[arg(long, value_delimiter = ',')]
    pub probe: Vec<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PseriesArgs {
    /// Partitioned system file `{f, g}`.
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub q: Vec<String>,
    #[arg(long, default_value = "1")]
    pub h: String,
    #[arg(long)]
    pub max_order: u32,
    #[arg(long, value_enum, default_value_t = Coefficients::ExactFlow)]
    pub coefficients: Coefficients,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct WordseriesArgs {
    /// Word system file `{alphabet, fields, lambdas?}`.
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<String>,
    #[arg(long)]
    pub max_order: u32,
    #[arg(long, value_enum, default_value_t = Delta::Iterated)]
    pub delta: Delta,
    /// Final time for iterated integrals.
    #[arg(long, default_value = "1")]
    pub t: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Generators,
    Basis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    Coproduct,
    Antipode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Over {
    Generators,
    Monomials,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coefficients {
    /// a(τ) = 1/τ!.
    ExactFlow,
    /// a(τ) = 2^|τ|.
    Pow2,
    /// a(τ) = |τ|!.
    Factorial,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Delta {
    /// Iterated integrals of the time coefficients up to `--t`.
    Iterated,
    /// δ(w) = 1/|w|!.
    Exp,
    /// The counit.
    Counit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemaName {
    Enumerate,
    Axioms,
    ControlCheck,
    RlbCheck,
    RightHanded,
    Evolve,
    Character,
    Norm,
    Series,
    Probe,
    Counterexample,
    GrowthCheck,
}
