mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "gcdring",
    version,
    about = "Gcd-graphs over finite commutative rings"
)]
pub struct Cli {
    /// Output format; CSV is available for tabular reports.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Seed for randomized choices (e.g. `ramanujan --psi random`).
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Largest ring cardinality accepted by the parser.
    #[arg(long, default_value_t = gcdring::ring::DEFAULT_MAX_CARD, global = true)]
    pub max_card: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PsiChoice {
    Canonical,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cardinality, characteristic, local factors, phi, mu and idempotents.
    Info { ring: String },
    /// Generating set, connectivity, diameter and diameter bounds.
    Graph {
        ring: String,
        /// Generators separated by ';', e.g. "(1,1);(x,0)".
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Eigenvalues from the closed form, grouped by unit orbits.
    Spectrum {
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        /// Evaluate every element separately instead of once per unit orbit.
        #[arg(long)]
        no_orbits: bool,
    },
    /// Compare the closed-form spectrum against the adjacency matrix.
    Verify {
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Table of c(g, R), closed form against the direct character sum.
    Ramanujan {
        ring: String,
        #[arg(long, value_enum, default_value_t = PsiChoice::Canonical)]
        psi: PsiChoice,
    },
    /// Write the graph in Graphviz format.
    ExportDot {
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gcdring: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
