use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reidtai_core::Mode;

#[derive(Parser, Debug)]
#[command(name = "reidtai", version, about = "Reid-Tai ages, Galois-orbit searches and torus-quotient verdicts")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Exit with status 1 when a report disagrees with the published data.
    #[arg(long, global = true)]
    pub strict_conformance: bool,
    /// Worker threads for the searches (0 = rayon default).
    #[arg(long, global = true, env = "REIDTAI_THREADS", default_value_t = 0)]
    pub threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Sum over the set of distinct Galois images (the literal predicate).
    #[value(alias = "paper-literal", alias = "literal")]
    ValueUnion,
    /// Twists of the whole multiset, paired by conjugation.
    OrbitSets,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::ValueUnion => Mode::ValueUnion,
            ModeArg::OrbitSets => Mode::OrbitSets,
        }
    }
}

pub const DEFAULT_D_MAX: u64 = 372;
pub const DEFAULT_F_MAX: u64 = 126;
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Age, Reid-Tai status, arc width and trace of one eigenvalue multiset.
    Age {
        /// Fractions such as "1/6,1/6,1/3".
        #[arg(long, allow_hyphen_values = true)]
        spectrum: String,
    },
    /// Reid-Tai check of a set of element spectra.
    RtCheck {
        /// One spectrum per element; repeatable.
        #[arg(long = "spectrum", required = true)]
        spectra: Vec<String>,
        /// Also check every non-identity power of each spectrum.
        #[arg(long)]
        powers: bool,
    },
    /// Orders whose minimal half-orbit sum is below one.
    OrdersScan {
        #[arg(long, default_value_t = DEFAULT_D_MAX)]
        bound: u64,
    },
    /// Classification of eigenvalue pairs.
    PairSearch {
        #[arg(long, default_value_t = DEFAULT_F_MAX)]
        f_max: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::ValueUnion)]
        mode: ModeArg,
    },
    /// Minimal half-orbit table.
    Table1,
    /// Absolute traces of padded exceptional multisets.
    Table2,
    /// Eigenvalue multisets of exceptional elements.
    Multisets {
        #[arg(long, value_enum, default_value_t = ModeArg::ValueUnion)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_F_MAX)]
        f_max: u64,
    },
    /// Minimal age of `dim` primitive n-th roots built from Galois blocks.
    SameOrderScreen {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        dim: u64,
    },
    /// Kodaira-zero / uniruled / rationally-connected verdict for a torus action.
    AvVerdict {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Full filtration report for a torus action.
    Filtration {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Same-order screen over every candidate order.
    SimpleAvScreen {
        #[arg(long)]
        dim: u64,
        /// Restrict to one order.
        #[arg(long)]
        n: Option<u64>,
        /// Scan the computed order set up to this bound instead of the published one.
        #[arg(long)]
        computed_orders: Option<u64>,
    },
    /// Transposition check on G(m,p,n).
    MonomialCheck {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Drop the trivial summand (permutation groups only).
        #[arg(long)]
        reflection_rep: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Case analysis of imprimitive exceptional elements.
    ImprimitiveCases {
        #[arg(long, default_value_t = DEFAULT_F_MAX)]
        f_max: u64,
    },
    /// Deviation of a unitary operator.
    Deviation(DeviationArgs),
    /// Extraspecial dimension bound for every m·p^n up to a limit.
    ExtraspecialScan {
        #[arg(long, default_value_t = 32)]
        max_dim: u64,
    },
    /// Re-check witnesses from a JSON file (a witness, a list, or any report).
    VerifyWitness { input: PathBuf },
    /// Compare stored reference outputs with fresh ones.
    Golden {
        /// Directory holding the reference files.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Rewrite the reference files instead of comparing.
        #[arg(long, env = "REIDTAI_REGENERATE_GOLDEN", value_parser = clap::builder::BoolishValueParser::new())]
        regenerate: bool,
    },
}

#[derive(Args, Debug)]
pub struct DeviationArgs {
    /// Eigenvalue multiset; reports the eigenbasis deviation.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["matrix", "random_trials"])]
    pub spectrum: Option<String>,
    /// JSON matrix of complex pairs `[[re, im], ...]`, measured in the standard basis.
    #[arg(long, conflicts_with = "random_trials")]
    pub matrix: Option<PathBuf>,
    /// Run this many seeded random product and tensor checks.
    #[arg(long)]
    pub random_trials: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "random_trials")]
    pub seed: u64,
}
