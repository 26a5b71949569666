use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rescomp::completeness::VERIFICATION_CEILING;
use rescomp::{RecurrenceSpec, Result, Variant};

#[derive(Debug, Parser)]
#[command(
    name = "rescomp",
    version,
    about = "Periods, orders and residue completeness of second-order recurrences modulo m"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Largest modulus re-checked by brute force.
    #[arg(long, global = true, default_value_t = VERIFICATION_CEILING)]
    pub ceiling: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    W,
    U,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::W => Variant::W,
            VariantArg::U => Variant::U,
        }
    }
}

/// The recurrence: `x_n = q*x_{n-1} ± x_{n-2}` with seed `(a, b)`.
#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Coefficient q (nonzero); write negative values as --q=-3.
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub b: i64,
    /// `w` adds the term two back, `u` subtracts it.
    #[arg(long, value_enum, default_value_t = VariantArg::W)]
    pub variant: VariantArg,
}

impl SpecArgs {
    pub fn spec(&self) -> Result<RecurrenceSpec> {
        RecurrenceSpec::new(self.a, self.b, self.q, self.variant.into())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One period of the sequence modulo m, in canonical rotation.
    Period {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Order k(m) of the companion matrix, by direct iteration and by factorization.
    Order {
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum, default_value_t = VariantArg::W)]
        variant: VariantArg,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Completeness and uniformity modulo m, or for every m up to a bound.
    Complete {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(
            long = "mod",
            conflicts_with = "bound",
            required_unless_present = "bound"
        )]
        modulus: Option<u64>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// All moduli up to the bound over which the w-recurrence is complete.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        bound: u64,
        /// Print the derivation for these moduli (may exceed the bound).
        #[arg(long, value_delimiter = ',')]
        explain: Vec<u64>,
    },
    /// Fundamental system modulo m, or the 3-power decomposition check.
    Fs {
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(
            long = "mod",
            conflicts_with = "three_power",
            required_unless_present = "three_power"
        )]
        modulus: Option<u64>,
        /// Check the decomposition modulo 3^n.
        #[arg(long)]
        three_power: Option<u32>,
    },
    /// Stride-four subsequence classes modulo an odd prime dividing q^2 + 4.
    Subseq {
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        prime: u64,
    },
    /// The u-recurrence: completeness and uniformity verdicts, or splitting
    /// type and period divisibility at a prime.
    #[command(group(ArgGroup::new("target").required(true).args(["modulus", "prime", "bound"])))]
    VariantU {
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        b: i64,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Runs the property suite of every module and prints a pass/fail table.
    Verify {
        /// Use the full parameter grids instead of the quick ones.
        #[arg(long)]
        full: bool,
    },
}
