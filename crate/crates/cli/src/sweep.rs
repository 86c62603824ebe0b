use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use majority_core::instances::{exhaustive_search, random_min_degree_graph, SearchOutcome};
use majority_core::schemes::{colour_auto, AutoOutcome};
use majority_core::{check_majority, Error};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{Failure, EXIT_INVARIANT, EXIT_OK};

pub const DEFAULT_SWEEP_NODE_LIMIT: u64 = 1_000_000;
pub const CSV_VERSION: u32 = 1;
pub const CSV_COLUMNS: &str = "trial,n,m,delta_actual,algorithm,pass,oracle_nodes,oracle_result";

pub struct SweepArgs {
    pub k: usize,
    pub delta: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub oracle_colours: Option<u32>,
    pub node_limit: u64,
    pub bipartite: bool,
    pub output: Option<PathBuf>,
}

struct Row {
    trial: usize,
    n: usize,
    m: usize,
    delta_actual: usize,
    algorithm: String,
    pass: bool,
    oracle_nodes: Option<u64>,
    oracle_result: &'static str,
    broken: bool,
}

/// Seed of trial `t`: the first word of stream `t` of the master generator.
fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng.next_u64()
}

fn run_trial(args: &SweepArgs, trial: usize) -> Result<Row, Failure> {
    let g = random_min_degree_graph(args.n, args.delta, args.bipartite, trial_seed(args.seed, trial))?;
    let mut row = Row {
        trial,
        n: g.vertex_count(),
        m: g.edge_count(),
        delta_actual: g.min_degree(),
        algorithm: String::new(),
        pass: false,
        oracle_nodes: None,
        oracle_result: "skipped",
        broken: false,
    };
    match colour_auto(&g, args.k) {
        Ok(AutoOutcome::Coloured { colouring, report }) => {
            row.algorithm = report.algorithm.name().to_string();
            row.pass = check_majority(&g, &colouring, args.k)?.pass;
        }
        Ok(AutoOutcome::BelowThreshold { .. }) => {
            row.algorithm = "none".to_string();
            let colours = args.oracle_colours.unwrap_or(args.k as u32 + 1);
            let outcome = exhaustive_search(&g, args.k, colours, args.node_limit)?;
            row.oracle_nodes = Some(outcome.node_count());
            row.oracle_result = match outcome {
                SearchOutcome::Found { colouring, .. } => {
                    row.pass = check_majority(&g, &colouring, args.k)?.pass;
                    "found"
                }
                SearchOutcome::Exhausted { limit_hit: false, .. } => "infeasible",
                SearchOutcome::Exhausted { limit_hit: true, .. } => "limit",
            };
        }
        Err(err @ (Error::Invariant(_) | Error::SelectorExhausted { .. })) => {
            eprintln!("trial {trial}: {err}");
            row.algorithm = "error".to_string();
            row.broken = true;
        }
        Err(err) => return Err(err.into()),
    }
    Ok(row)
}

pub fn run(args: SweepArgs) -> Result<u8, Failure> {
    if args.k < 2 {
        return Err(Failure::usage(format!("--k must be at least 2, got {}", args.k)));
    }
    let rows: Vec<Row> = (0..args.trials)
        .into_par_iter()
        .map(|trial| run_trial(&args, trial))
        .collect::<Result<_, _>>()?;

    let mut csv = format!(
        "# majority sweep v{CSV_VERSION}: k={} delta={} n={} trials={} seed={} bipartite={}\n{CSV_COLUMNS}\n",
        args.k, args.delta, args.n, args.trials, args.seed, args.bipartite
    );
    for r in &rows {
        let nodes = r.oracle_nodes.map(|n| n.to_string()).unwrap_or_default();
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            r.trial, r.n, r.m, r.delta_actual, r.algorithm, r.pass, nodes, r.oracle_result
        )
        .expect("writing to a string");
    }
    match &args.output {
        Some(path) => fs::write(path, &csv).map_err(|e| Failure::io(path, e))?,
        None => print!("{csv}"),
    }
    Ok(if rows.iter().any(|r| r.broken) { EXIT_INVARIANT } else { EXIT_OK })
}
