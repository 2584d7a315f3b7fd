//! Command-line front end for the `univobs` library.

mod commands;
mod io;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Outcome;

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "univobs",
    version,
    about = "Containment orders, width parameters and obstruction sets of small graphs"
)]
pub struct Cli {
    /// Largest vertex count for enumerated universes.
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    /// Largest edge multiplicity for enumerated universes.
    #[arg(long, global = true)]
    pub multmax: Option<u32>,
    /// Time limit per containment test in milliseconds.
    #[arg(long, global = true, env = "UNIVOBS_BUDGET_MS")]
    pub budget_ms: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test whether one graph is contained in another.
    Contain(ContainArgs),
    /// Compute a width parameter exactly.
    Param(ParamArgs),
    /// Compute the obstruction set of a class within a bounded universe.
    Obs(ObsArgs),
    /// Write a member of a parametric family.
    Gen(GenArgs),
    /// Collection parameters and the approximation driver.
    #[command(subcommand)]
    Universal(UniversalCommand),
    /// Finite posets and the Rado structure.
    #[command(subcommand)]
    Poset(PosetCommand),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ContainArgs {
    #[arg(long)]
    pub relation: String,
    /// Pattern graph file (text or graph6, `-` for stdin).
    #[arg(long)]
    pub h: String,
    /// Host graph file.
    #[arg(long)]
    pub g: String,
    /// `simple` or `multigraph`; defaults to the relation's own mode.
    #[arg(long)]
    pub mode: Option<String>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(
        long,
        required_unless_present = "all_kinds",
        conflicts_with = "all_kinds"
    )]
    pub kind: Option<String>,
    #[arg(long)]
    pub all_kinds: bool,
    #[arg(long)]
    pub g: String,
    /// Graph list for `z_apex` (text blocks).
    #[arg(long)]
    pub z: Option<String>,
}

#[derive(Debug, Args)]
pub struct ObsArgs {
    /// Defaults to the class's own relation.
    #[arg(long)]
    pub relation: Option<String>,
    /// A named class.
    #[arg(long, conflicts_with_all = ["kind", "spec"])]
    pub class: Option<String>,
    /// Parameter kind, together with `--k`, for the class `kind <= k`.
    #[arg(long, requires = "k")]
    pub kind: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    /// A class given by an obstruction list file.
    #[arg(long, conflicts_with = "kind")]
    pub spec: Option<String>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub k: usize,
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long)]
    pub graph6: bool,
}

#[derive(Debug, Subcommand)]
pub enum UniversalCommand {
    /// Evaluate a collection parameter on a graph.
    Eval {
        #[arg(long)]
        collection: String,
        #[arg(long)]
        g: String,
    },
    /// Run the approximation driver.
    Approx {
        #[arg(long)]
        collection: String,
        /// `identity`, `linear:a,b`, `poly:c,b` or `table:v0,v1,...`.
        #[arg(long)]
        gap: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        k: usize,
    },
    /// Tabulate a parameter against a collection parameter.
    Gap {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        collection: String,
        /// Graph list file; defaults to every graph within `--nmax`.
        #[arg(long)]
        corpus: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PosetCommand {
    Width {
        #[arg(long)]
        input: String,
    },
    Chains {
        #[arg(long)]
        input: String,
    },
    /// The Rado truncation at `n`, with the witness check for `m` sets.
    Rado {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(Outcome { text, verified }) => {
            print!("{text}");
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
