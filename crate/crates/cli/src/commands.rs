use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use majority_core::format::{parse_colouring, parse_graph, write_colouring, write_graph};
use majority_core::instances::{
    bipartite_lower_bound, exhaustive_search, general_lower_bound, random_min_degree_graph,
    SearchOutcome,
};
use majority_core::schemes::{binary_split, colour_auto, colour_with, Algorithm, AutoOutcome};
use majority_core::{check_majority, EdgeColouring, Graph};

use crate::report::{
    digest, Failure, OracleSummary, Params, RunReport, Verdict, EXIT_FAILED, EXIT_OK,
    EXIT_PRECONDITION,
};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn load_graph(path: &Path, report: &mut RunReport, role: &'static str) -> Result<Graph, Failure> {
    let text = read(path)?;
    report.inputs.insert(role, digest(text.as_bytes()));
    parse_graph(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn check_k(k: usize) -> Result<(), Failure> {
    if k < 2 {
        return Err(Failure::usage(format!("--k must be at least 2, got {k}")));
    }
    Ok(())
}

fn verdict_for(g: &Graph, c: &EdgeColouring, k: usize) -> Result<Verdict, Failure> {
    let v = check_majority(g, c, k)?;
    Ok(Verdict { pass: v.pass, witness: v.witness })
}

fn oracle_summary(outcome: &SearchOutcome) -> OracleSummary {
    match outcome {
        SearchOutcome::Found { node_count, .. } => OracleSummary {
            nodes: *node_count,
            limit_hit: false,
            result: "found",
        },
        SearchOutcome::Exhausted { node_count, limit_hit } => OracleSummary {
            nodes: *node_count,
            limit_hit: *limit_hit,
            result: if *limit_hit { "limit" } else { "infeasible" },
        },
    }
}

pub struct ColourArgs {
    pub k: usize,
    pub input: PathBuf,
    pub output: PathBuf,
    pub algorithm: Option<Algorithm>,
    pub report: Option<PathBuf>,
    pub oracle: bool,
    pub node_limit: u64,
}

pub fn colour(args: ColourArgs) -> Result<u8, Failure> {
    let start = Instant::now();
    check_k(args.k)?;
    let k = args.k;
    let mut report = RunReport::new("colour", k);
    let g = load_graph(&args.input, &mut report, "graph")?;

    let scheme = match args.algorithm {
        Some(algorithm) => Some(colour_with(&g, k, algorithm)?),
        None => match colour_auto(&g, k)? {
            AutoOutcome::Coloured { colouring, report } => Some((colouring, report)),
            AutoOutcome::BelowThreshold { .. } => None,
        },
    };
    let (colouring, code) = match scheme {
        Some((colouring, scheme)) => {
            report.algorithm = Some(scheme.algorithm.name().to_string());
            report.params = Some(Params { n: scheme.n, m: scheme.m, alpha: scheme.alpha.clone() });
            report.scheme = Some(scheme);
            (Some(colouring), EXIT_OK)
        }
        None if args.oracle => {
            let outcome = exhaustive_search(&g, k, k as u32 + 1, args.node_limit)?;
            report.algorithm = Some("oracle".to_string());
            report.oracle = Some(oracle_summary(&outcome));
            match outcome {
                SearchOutcome::Found { colouring, .. } => (Some(colouring), EXIT_OK),
                SearchOutcome::Exhausted { limit_hit: false, .. } => (None, EXIT_FAILED),
                SearchOutcome::Exhausted { limit_hit: true, .. } => (None, EXIT_PRECONDITION),
            }
        }
        None => {
            let (n, m) = binary_split(k);
            report.params = Some(Params { n, m, alpha: Vec::new() });
            eprintln!(
                "minimum degree {} is below every scheme's threshold for k = {k}",
                g.min_degree()
            );
            (None, EXIT_PRECONDITION)
        }
    };

    if let Some(c) = &colouring {
        let verdict = verdict_for(&g, c, k)?;
        if !verdict.pass {
            return Err(Failure {
                code: crate::report::EXIT_INVARIANT,
                message: "produced colouring failed verification".into(),
            });
        }
        report.verdict = Some(verdict);
        write(&args.output, &write_colouring(c))?;
    }
    report.duration_ms = start.elapsed().as_millis() as u64;
    if let Some(path) = &args.report {
        write(path, &report.to_json())?;
    }
    Ok(code)
}

pub fn verify(k: usize, graph: &Path, colouring: &Path, json: bool) -> Result<u8, Failure> {
    let start = Instant::now();
    check_k(k)?;
    let mut report = RunReport::new("verify", k);
    let g = load_graph(graph, &mut report, "graph")?;
    let text = read(colouring)?;
    report.inputs.insert("colouring", digest(text.as_bytes()));
    let c = parse_colouring(&text).map_err(|e| Failure::usage(format!("{}: {e}", colouring.display())))?;
    if c.len() != g.edge_count() {
        return Err(Failure::usage(format!(
            "colouring has {} edges, graph has {}",
            c.len(),
            g.edge_count()
        )));
    }
    let verdict = verdict_for(&g, &c, k)?;
    let pass = verdict.pass;
    if json {
        report.verdict = Some(verdict);
        report.duration_ms = start.elapsed().as_millis() as u64;
        println!("{}", report.to_json());
    } else if let Some(w) = verdict.witness {
        println!(
            "FAIL: vertex {} has {} edges of colour {} (cap {})",
            w.vertex, w.count, w.colour, w.cap
        );
    } else {
        println!("PASS");
    }
    Ok(if pass { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Clone, Copy)]
pub enum Construction {
    BipartiteLower,
    GeneralLower,
    Random,
}

pub fn construct(
    family: Construction,
    output: &Path,
    k: Option<usize>,
    n: Option<usize>,
    delta: Option<usize>,
    bipartite: bool,
    seed: u64,
) -> Result<u8, Failure> {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| Failure::usage(format!("--{flag} is required for this family")))
    };
    let g = match family {
        Construction::BipartiteLower => bipartite_lower_bound(need(k, "k")?)?,
        Construction::GeneralLower => general_lower_bound(need(k, "k")?)?,
        Construction::Random => random_min_degree_graph(need(n, "n")?, need(delta, "delta")?, bipartite, seed)?,
    };
    write(output, &write_graph(&g))?;
    Ok(EXIT_OK)
}

pub fn oracle(
    k: usize,
    graph: &Path,
    colours: Option<u32>,
    node_limit: u64,
    output: Option<&Path>,
    json: bool,
) -> Result<u8, Failure> {
    let start = Instant::now();
    check_k(k)?;
    let mut report = RunReport::new("oracle", k);
    let g = load_graph(graph, &mut report, "graph")?;
    let colour_count = colours.unwrap_or(k as u32 + 1);
    let outcome = exhaustive_search(&g, k, colour_count, node_limit)?;
    report.algorithm = Some("oracle".to_string());
    report.oracle = Some(oracle_summary(&outcome));
    let code = match &outcome {
        SearchOutcome::Found { colouring, .. } => {
            report.verdict = Some(verdict_for(&g, colouring, k)?);
            if let Some(path) = output {
                write(path, &write_colouring(colouring))?;
            }
            EXIT_OK
        }
        SearchOutcome::Exhausted { limit_hit: false, .. } => EXIT_FAILED,
        SearchOutcome::Exhausted { limit_hit: true, .. } => EXIT_PRECONDITION,
    };
    report.duration_ms = start.elapsed().as_millis() as u64;
    if json {
        println!("{}", report.to_json());
    } else {
        let summary = report.oracle.as_ref().expect("set above");
        println!("{} after {} nodes", summary.result, summary.nodes);
    }
    Ok(code)
}
