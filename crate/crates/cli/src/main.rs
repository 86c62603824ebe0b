//! `majority`: build, check and search for majority edge colourings.
//!
//! Exit codes: 0 success, 1 failed verification or certified infeasibility,
//! 2 usage or format error, 3 unmet precondition, 4 internal invariant
//! violation.

mod commands;
mod report;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use majority_core::instances::DEFAULT_NODE_LIMIT;

#[derive(Parser)]
#[command(name = "majority", version, about = "Majority edge colourings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Colour a graph with k+1 colours and verify the result.
    Colour {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Auto)]
        algorithm: AlgorithmArg,
        /// Write a JSON run report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Fall back to exhaustive search when no scheme applies.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Check a colouring against the majority condition.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: PathBuf,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Write a lower-bound construction or a seeded random graph.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        bipartite: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive search for a colouring.
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: PathBuf,
        /// Number of colours; defaults to k+1.
        #[arg(long)]
        colours: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        /// Write the colouring here when one is found.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the schemes (and the oracle where they decline) on random graphs.
    Sweep {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Colours for the oracle; defaults to k+1.
        #[arg(long)]
        oracle_colours: Option<u32>,
        #[arg(long, default_value_t = sweep::DEFAULT_SWEEP_NODE_LIMIT)]
        node_limit: u64,
        #[arg(long)]
        bipartite: bool,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Auto,
    Bipartite,
    General,
    Refined,
    SmallK,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    BipartiteLower,
    GeneralLower,
    Random,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Colour { k, input, output, algorithm, report, oracle, node_limit } => {
            commands::colour(commands::ColourArgs {
                k,
                input,
                output,
                algorithm: match algorithm {
                    AlgorithmArg::Auto => None,
                    AlgorithmArg::Bipartite => Some(majority_core::schemes::Algorithm::Bipartite),
                    AlgorithmArg::General => Some(majority_core::schemes::Algorithm::General),
                    AlgorithmArg::Refined => Some(majority_core::schemes::Algorithm::Refined),
                    AlgorithmArg::SmallK => Some(majority_core::schemes::Algorithm::SmallK),
                },
                report,
                oracle,
                node_limit,
            })
        }
        Command::Verify { k, graph, colouring, json } => commands::verify(k, &graph, &colouring, json),
        Command::Construct { family, output, k, n, delta, bipartite, seed } => {
            let family = match family {
                Family::BipartiteLower => commands::Construction::BipartiteLower,
                Family::GeneralLower => commands::Construction::GeneralLower,
                Family::Random => commands::Construction::Random,
            };
            commands::construct(family, &output, k, n, delta, bipartite, seed)
        }
        Command::Oracle { k, graph, colours, node_limit, output, json } => {
            commands::oracle(k, &graph, colours, node_limit, output.as_deref(), json)
        }
        Command::Sweep { k, delta, n, trials, seed, oracle_colours, node_limit, bipartite, output } => {
            sweep::run(sweep::SweepArgs {
                k,
                delta,
                n,
                trials,
                seed,
                oracle_colours,
                node_limit,
                bipartite,
                output,
            })
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
