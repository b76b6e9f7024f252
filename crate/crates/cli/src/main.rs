//! `strassen`: verify, analyse, transform and run bilinear matrix
//! multiplication algorithms.
//!
//! Exit codes: 0 success, 1 a verification or property check failed,
//! 2 bad input or usage.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "strassen", version, about = "Exact tools for bilinear matrix multiplication algorithms")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every randomized step; printed in each report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

/// An algorithm file or one of the built-in algorithms.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Algorithm file (JSON).
    #[arg(conflicts_with = "builtin")]
    path: Option<PathBuf>,

    /// `strassen`, `strassen-extended`, or `naive M N P`.
    #[arg(long, num_args = 1..=4, value_name = "NAME")]
    builtin: Option<Vec<String>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Strassen,
    Naive,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that an algorithm's terms sum to its target tensor.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Close the symmetry generators and report the group and its orbits.
    Group {
        /// Use the six-factor extended algorithm and its generators.
        #[arg(long)]
        extended: bool,
    },
    /// Orbit partition of the algorithm terms under the symmetry group.
    Orbits {
        #[arg(long)]
        extended: bool,
    },
    /// Line profile of one factor, its dependent triples and fixing maps.
    Flatten {
        #[command(flatten)]
        source: Source,
        /// Factor position, 1-based.
        #[arg(long, default_value_t = 1)]
        factor: usize,
    },
    /// Apply a sandwich transform `x⊗y⊗z ↦ PxQ⁻¹ ⊗ QyR⁻¹ ⊗ RzP⁻¹`.
    Transform {
        #[command(flatten)]
        source: Source,
        /// Seed for a random invertible (P, Q, R); defaults to --seed.
        #[arg(long, conflicts_with_all = ["p", "q", "r"])]
        p_seed: Option<u64>,
        /// JSON file holding P as rows of rational strings.
        #[arg(long, requires_all = ["q", "r"])]
        p: Option<PathBuf>,
        #[arg(long, requires_all = ["p", "r"])]
        q: Option<PathBuf>,
        #[arg(long, requires_all = ["p", "q"])]
        r: Option<PathBuf>,
        /// Where to write the transformed algorithm.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiply two seeded random N×N matrices with recursive Strassen.
    Multiply {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        cutoff: usize,
        /// rational, i64 or f64.
        #[arg(long, default_value = "rational")]
        ring: String,
        /// Print the multiplication and addition counts.
        #[arg(long)]
        count_ops: bool,
        /// Compare against the naive product; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Time Strassen (and optionally naive) products over several sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "64,128")]
        sizes: Vec<usize>,
        #[arg(long, default_value = "f64")]
        ring: String,
        #[arg(long, value_delimiter = ',', default_value = "64")]
        cutoff: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Strassen)]
        method: MethodArg,
        /// Emit CSV rows.
        #[arg(long)]
        csv: bool,
    },
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let seed = cli.seed;
    match &cli.command {
        Command::Verify { source } => commands::verify(source),
        Command::Group { extended } => commands::group(*extended, false),
        Command::Orbits { extended } => commands::group(*extended, true),
        Command::Flatten { source, factor } => commands::flatten(source, *factor),
        Command::Transform {
            source,
            p_seed,
            p,
            q,
            r,
            out,
        } => {
            let matrices = match (p, q, r) {
                (Some(p), Some(q), Some(r)) => Some([p.clone(), q.clone(), r.clone()]),
                _ => None,
            };
            commands::transform(source, p_seed.unwrap_or(seed), matrices, out.as_deref())
        }
        Command::Multiply {
            size,
            cutoff,
            ring,
            count_ops,
            check,
        } => commands::multiply(*size, *cutoff, ring, *count_ops, *check, seed),
        Command::Bench {
            sizes,
            ring,
            cutoff,
            trials,
            method,
            csv,
        } => commands::bench(sizes, ring, cutoff, *trials, *method, *csv, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).unwrap_or_else(Outcome::from_failure);
    outcome.print(cli.json, cli.seed);
    ExitCode::from(outcome.code)
}
