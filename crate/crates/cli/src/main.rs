//! `ppa`: command-line front end for the Poisson algebra engine.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ppa::catalog::Family;
use ppa::cauchon::{Case3Strategy, DEFAULT_CUTOFF};

use crate::output::{Emitter, Format};

#[derive(Parser, Debug)]
#[command(name = "ppa", version, about = "Exact verification for iterated Poisson polynomial algebras")]
pub struct Cli {
    /// Seed for every randomized draw.
    #[arg(long, global = true, env = "PPA_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Number of random parameter draws per family.
    #[arg(long, global = true, env = "PPA_DRAWS", default_value_t = 3)]
    pub draws: usize,
    /// Iteration limit for nilpotency and theta series.
    #[arg(long, global = true, env = "PPA_CUTOFF", default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: usize,
    /// Max-abs entry bound for orbit searches.
    #[arg(long, global = true, env = "PPA_BUDGET", default_value_t = 2)]
    pub budget: u32,
    #[arg(long, global = true, env = "PPA_FORMAT", value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// Either an algebra-spec file or a catalog family drawn at random.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Algebra-spec document.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    pub spec: Option<PathBuf>,
    #[arg(long, requires = "n")]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    AfterFirst,
    BeforeTarget,
}

impl From<Strategy> for Case3Strategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::AfterFirst => Case3Strategy::AfterFirst,
            Strategy::BeforeTarget => Case3Strategy::BeforeTarget,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IsoMode {
    /// Two-variable test, then the cyclic decision, then orbit search.
    Auto,
    TwoByTwo,
    CaseB,
    Orbit,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the algebra-spec document of a catalog family.
    Catalog {
        family: Family,
        #[arg(long)]
        n: usize,
        /// Parameter document; drawn from the seed when absent.
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Jacobi identity, step conditions and, when torus data is present, the grading suite.
    Verify(Source),
    /// Normalize to a quadratic structure by deleting derivations.
    Gk {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Strategy::AfterFirst)]
        strategy: Strategy,
        /// Re-check the deletion identities at every deletion.
        #[arg(long)]
        certify: bool,
    },
    /// Apply and verify the deleting map of one step.
    Theta {
        spec: PathBuf,
        /// Step to delete (generator number, from 2).
        #[arg(long)]
        step: usize,
        /// Shift constant; taken from the spec or its torus when absent.
        #[arg(long)]
        s: Option<String>,
        /// Laurent-polynomial document to map through theta.
        #[arg(long)]
        apply: Option<PathBuf>,
    },
    /// Enumerate Poisson ideals generated by subsets of the generators.
    Hstable(Source),
    /// Decide whether two quadratic Poisson fields are isomorphic.
    Iso {
        lambda: PathBuf,
        mu: PathBuf,
        #[arg(long, value_enum, default_value_t = IsoMode::Auto)]
        mode: IsoMode,
    },
    /// Lattice of exponents of central monomials.
    Center { lambda: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = Emitter::new(cli.format);
    let code = commands::dispatch(&cli, &mut out);
    out.finish(code);
    ExitCode::from(code)
}
