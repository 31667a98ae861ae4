use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mlsp::lefschetz::Inequality;
use mlsp::FieldDescriptor;

#[derive(Parser, Debug)]
#[command(name = "mlsp", version, about = "Multigraded Lefschetz verifiers for balanced simplicial complexes")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Opts {
    /// gf2k:K, gfp:P, rat or symbolic.
    #[arg(long, global = true, default_value = "gf2k:32", value_parser = parse_field)]
    pub field: FieldDescriptor,
    /// Base seed; falls back to MLSP_SEED, then to a hash of the input.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of seeded substitutions, and of random elements where a
    /// statement quantifies over all elements.
    #[arg(long, global = true, default_value_t = 3, value_parser = parse_trials)]
    pub trials: usize,
    /// Work over GF(2)(p) instead of substituting.
    #[arg(long, global = true)]
    pub symbolic: bool,
    /// Multiply by random linear forms instead of the canonical ones.
    #[arg(long, global = true)]
    pub random_element: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn parse_field(s: &str) -> Result<FieldDescriptor, String> {
    s.parse().map_err(|e: mlsp::Error| e.to_string())
}

fn parse_trials(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("need at least one trial".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_inequality(s: &str) -> Result<Inequality, String> {
    s.parse().map_err(|e: mlsp::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sizes, f- and h-vectors.
    Info {
        #[arg(long)]
        input: PathBuf,
    },
    /// Purity, balance, pseudomanifold, orientability, sphere, manifold,
    /// Cohen-Macaulay and 2-CM predicates.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// f, h, flag f, flag h, h' and h''.
    Hvec {
        #[arg(long)]
        input: PathBuf,
        /// Reduced Betti numbers β̃_{-1}, …, β̃_{d-1}; computed if absent.
        #[arg(long, value_delimiter = ',')]
        betti: Option<Vec<i64>>,
    },
    /// Hilbert function of a generic Artinian reduction.
    Artinian {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        socle: bool,
    },
    /// ×ℓ^{a−2b} : A_b → A_{a−b} for every 2b ≤ a.
    Slp {
        #[arg(long)]
        input: PathBuf,
    },
    /// Injectivity and surjectivity in the lowest and highest degrees.
    Ends {
        #[arg(long)]
        input: PathBuf,
    },
    /// Surjectivity on homology manifolds.
    Manifold {
        #[arg(long)]
        input: PathBuf,
    },
    /// Injectivity on doubly Cohen-Macaulay complexes.
    #[command(name = "2cm")]
    TwoCm {
        #[arg(long)]
        input: PathBuf,
    },
    /// Strong Lefschetz property of a Gorensteinification.
    Bmu {
        #[arg(long)]
        input: PathBuf,
        /// Index into the top homology basis.
        #[arg(long, default_value_t = 0)]
        cycle: usize,
    },
    /// Anisotropy of the Lefschetz form, symbolically.
    Anisotropy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
        /// Colors (from 1) of the partial form.
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<usize>>,
    },
    /// Differential identities of the evaluation map, symbolically.
    #[command(name = "diff-formula")]
    DiffFormula {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        general: bool,
    },
    /// Flag face-number inequalities.
    Inequalities {
        #[arg(long)]
        input: PathBuf,
        /// Any of flag-h-monotone, h-ratio, manifold-flag-h,
        /// manifold-h-ratio, 2cm-flag-h; all if absent.
        #[arg(long, value_delimiter = ',', value_parser = parse_inequality)]
        which: Vec<Inequality>,
        #[arg(long, value_delimiter = ',')]
        betti: Option<Vec<i64>>,
    },
    /// Writes a complex as JSON.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Degenerate middle map of a partial barycentric subdivision.
    Counterexample {
        #[arg(long = "i")]
        i: usize,
        #[arg(long = "d")]
        d: usize,
        #[arg(long = "n")]
        n: usize,
    },
}

impl Command {
    pub fn input(&self) -> Option<&Path> {
        match self {
            Command::Info { input }
            | Command::Check { input }
            | Command::Hvec { input, .. }
            | Command::Artinian { input, .. }
            | Command::Slp { input }
            | Command::Ends { input }
            | Command::Manifold { input }
            | Command::TwoCm { input }
            | Command::Bmu { input, .. }
            | Command::Anisotropy { input, .. }
            | Command::DiffFormula { input, .. }
            | Command::Inequalities { input, .. } => Some(input),
            Command::Construct { .. } | Command::Counterexample { .. } => None,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// ∂Δ^{a_1} * ⋯ * ∂Δ^{a_m}, colored by factor.
    Join {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
    },
    /// Cross-polytope boundary colored by antipodal pairs.
    Crosspoly {
        #[arg(long = "d")]
        d: usize,
    },
    /// ∂Δ^k, monochromatic.
    Simplexbdry {
        #[arg(long = "k")]
        k: usize,
    },
    /// Stacked (d−1)-sphere on n vertices; random with --seed.
    Stacked {
        #[arg(long = "d")]
        d: usize,
        #[arg(long = "n")]
        n: usize,
    },
    /// Stellar subdivision at a face, monochromatic.
    Stellar {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        face: Vec<String>,
    },
    /// l-th partial barycentric subdivision with the coarse coloring
    /// a = (d−l, l), or the fine one with --fine.
    Sd {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "l")]
        l: usize,
        #[arg(long)]
        fine: bool,
    },
}
