use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gammaspec",
    version,
    about = "Finite commutative ternary Γ-semirings"
)]
pub struct Cli {
    #[command(flatten)]
    pub source: Source,

    /// Output format; not every command supports every format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest carrier accepted, and largest carrier whose ideals are enumerated.
    #[arg(long, global = true)]
    pub cap_carrier: Option<usize>,

    /// Largest number of ideals an enumeration may produce.
    #[arg(long, global = true)]
    pub cap_ideals: Option<usize>,

    /// Worker threads; results do not depend on it.
    #[arg(long, env = "GAMMASPEC_THREADS", global = true)]
    pub threads: Option<usize>,

    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct Source {
    /// JSON semiring file, or `-` for standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Inline JSON semiring, e.g. '{"kind":"modular","n":12,"gamma":[1,5]}'.
    #[arg(long, global = true)]
    pub preset: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every semiring axiom exhaustively.
    Verify {
        /// Violations kept in the report.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Ideals, primes and the Zariski topology.
    Spectrum,
    /// The slice (a, b) ↦ {a b c}_γ.
    Table {
        /// Γ by name (modular presets name Γ by residue).
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        c: usize,
    },
    /// Localize the semiring or a module at a multiplicative system.
    Localize {
        #[command(flatten)]
        system: SystemArg,
        /// Module to localize instead of the semiring.
        #[arg(long)]
        module: Option<String>,
    },
    /// Sections over D(a) against the algebraic localization at a.
    Sections {
        #[arg(long)]
        element: usize,
        /// Module whose associated sheaf is used; the structure sheaf by default.
        #[arg(long)]
        module: Option<String>,
    },
    /// Čech cohomology of a basic cover.
    Cech {
        /// Elements a whose D(a) form the cover, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        cover: Vec<usize>,
        /// Module whose associated sheaf is used; the structure sheaf by default.
        #[arg(long)]
        module: Option<String>,
    },
    /// Tensor product of two modules.
    Tensor {
        #[arg(long)]
        m1: String,
        #[arg(long)]
        m2: String,
    },
    /// Tor₁(ℤ/m1, N) over a modular semiring.
    Tor {
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: String,
        /// Also compute Tor₁ from the presentation T ⊕ T → ℤ/m1.
        #[arg(long)]
        second_presentation: bool,
        /// Also probe Tor₁(ℤ/m, N) for every divisor m.
        #[arg(long)]
        flatness: bool,
    },
    /// Replay the reference claims about ℤ/12 and ℤ/4.
    PaperCheck,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SystemArg {
    /// The system generated by these elements, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub generators: Option<Vec<usize>>,
    /// The system generated by one element.
    #[arg(long)]
    pub element: Option<usize>,
    /// The complement of the prime with this index in the spectrum.
    #[arg(long)]
    pub prime: Option<usize>,
}
