//! Constructive colouring schemes and the dispatcher that picks among them.
//!
//! Every scheme returns a `k+1` colouring that has already passed
//! [`check_majority`]; a failure there is reported as
//! [`Error::Invariant`].

mod bipartite;
mod eliminate;
mod general;
mod refined;
mod small_k;

use num_traits::One;
use serde::Serialize;

pub use bipartite::colour_bipartite;
pub use eliminate::{eliminate_bad_components, MonoComponent};
pub use general::{colour_general_2k2, general_weight};
pub use refined::{colour_refined, refined_split, RefinedSummary};
pub use small_k::colour_small_k;

use crate::colouring::{check_majority, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::{is_bipartite, Graph};
use crate::rounding::{round_weights, Rational, WeightAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Bipartite,
    General,
    Refined,
    SmallK,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bipartite => "bipartite",
            Algorithm::General => "general",
            Algorithm::Refined => "refined",
            Algorithm::SmallK => "small-k",
        }
    }

    pub fn from_name(name: &str) -> Option<Algorithm> {
        [Algorithm::Bipartite, Algorithm::General, Algorithm::Refined, Algorithm::SmallK]
            .into_iter()
            .find(|a| a.name() == name)
    }
}

/// Statistics of one rounding round on the not yet coloured edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundStats {
    pub colour: u32,
    pub weight: String,
    pub class_edges: usize,
    pub class_max_degree: usize,
    pub residual_edges: usize,
    pub residual_max_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeReport {
    pub algorithm: Algorithm,
    pub k: usize,
    /// Number of binary levels and of rounded colours in the refined scheme,
    /// from `k + 1 = 2^n + m`.
    pub n: u32,
    pub m: usize,
    /// Rounding weights in the order used, as `p/q`.
    pub alpha: Vec<String>,
    pub min_degree: usize,
    pub rounds: Vec<RoundStats>,
    /// Bad-component counts per elimination pass, one list per pass.
    pub eliminations: Vec<Vec<usize>>,
    pub refined: Option<RefinedSummary>,
    /// Vertex count of the graph the scheme actually coloured, when it
    /// differs from the input.
    pub reduced_vertices: Option<usize>,
    pub pass: bool,
}

impl SchemeReport {
    fn new(algorithm: Algorithm, g: &Graph, k: usize) -> Self {
        let (n, m) = binary_split(k);
        SchemeReport {
            algorithm,
            k,
            n,
            m,
            alpha: Vec::new(),
            min_degree: g.min_degree(),
            rounds: Vec::new(),
            eliminations: Vec::new(),
            refined: None,
            reduced_vertices: None,
            pass: false,
        }
    }
}

/// `(n, m)` with `k + 1 = 2^n + m` and `0 <= m < 2^n`.
pub fn binary_split(k: usize) -> (u32, usize) {
    let n = (k + 1).ilog2();
    (n, k + 1 - (1usize << n))
}

pub fn rational_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Smallest minimum degree each scheme accepts.
pub fn threshold(algorithm: Algorithm, k: usize) -> usize {
    match algorithm {
        Algorithm::Bipartite => k * (k - 1),
        Algorithm::SmallK => k * k,
        Algorithm::General => 2 * k * k,
        Algorithm::Refined => {
            let (_, m) = binary_split(k);
            (3 * k * k + k * m + k).div_ceil(2)
        }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::input(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

fn require_min_degree(g: &Graph, algorithm: Algorithm, k: usize) -> Result<()> {
    check_k(k)?;
    let need = threshold(algorithm, k);
    if g.min_degree() < need {
        return Err(Error::precondition(format!(
            "{} scheme needs minimum degree at least {need} for k = {k}, graph has {}",
            algorithm.name(),
            g.min_degree()
        )));
    }
    Ok(())
}

/// Final re-verification shared by all schemes.
fn verified(g: &Graph, colours: Vec<u32>, k: usize, report: &mut SchemeReport) -> Result<EdgeColouring> {
    let c = EdgeColouring::new(colours, k as u32 + 1)
        .map_err(|e| Error::invariant(format!("incomplete colouring: {e}")))?;
    let verdict = check_majority(g, &c, k)?;
    if let Some(w) = verdict.witness {
        return Err(Error::invariant(format!(
            "{} scheme produced {} edges of colour {} at vertex {} (cap {})",
            report.algorithm.name(),
            w.count,
            w.colour,
            w.vertex,
            w.cap
        )));
    }
    report.pass = true;
    Ok(c)
}

/// Rounds the uncoloured edges (`colours[e] == 0`) with constant weight `z`
/// and gives the selected ones colour `colour`. Returns the selected edges.
fn round_into(
    g: &Graph,
    colours: &mut [u32],
    z: &Rational,
    colour: u32,
    report: &mut SchemeReport,
) -> Result<Vec<usize>> {
    let open: Vec<usize> = (0..colours.len()).filter(|&e| colours[e] == 0).collect();
    let (sub, to_parent) = g.edge_subgraph(&open);
    let weights = WeightAssignment::constant(sub.edge_count(), z.clone())?;
    let rounded = round_weights(&sub, &weights)?;
    let selected: Vec<usize> = rounded.selected().into_iter().map(|e| to_parent[e]).collect();
    for &e in &selected {
        colours[e] = colour;
    }
    let mut class_degree = vec![0usize; g.vertex_count()];
    let mut residual_degree = vec![0usize; g.vertex_count()];
    for &e in &open {
        let (u, v) = g.edge(e);
        let target = if colours[e] == colour { &mut class_degree } else { &mut residual_degree };
        target[u] += 1;
        target[v] += 1;
    }
    report.alpha.push(rational_text(z));
    report.rounds.push(RoundStats {
        colour,
        weight: rational_text(z),
        class_edges: selected.len(),
        class_max_degree: class_degree.iter().copied().max().unwrap_or(0),
        residual_edges: open.len() - selected.len(),
        residual_max_degree: residual_degree.iter().copied().max().unwrap_or(0),
    });
    Ok(selected)
}

fn unit() -> Rational {
    Rational::one()
}

/// Result of [`colour_auto`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutoOutcome {
    Coloured { colouring: EdgeColouring, report: SchemeReport },
    /// No scheme's minimum-degree requirement holds.
    BelowThreshold { min_degree: usize },
}

/// The first scheme whose hypotheses hold, in the order bipartite, small `k`,
/// refined, general.
pub fn select_algorithm(g: &Graph, k: usize) -> Option<Algorithm> {
    let delta = g.min_degree();
    if delta >= threshold(Algorithm::Bipartite, k) && is_bipartite(g).is_bipartite() {
        return Some(Algorithm::Bipartite);
    }
    if k <= 4 && delta >= threshold(Algorithm::SmallK, k) {
        return Some(Algorithm::SmallK);
    }
    [Algorithm::Refined, Algorithm::General]
        .into_iter()
        .find(|&a| delta >= threshold(a, k))
}

pub fn colour_with(g: &Graph, k: usize, algorithm: Algorithm) -> Result<(EdgeColouring, SchemeReport)> {
    match algorithm {
        Algorithm::Bipartite => colour_bipartite(g, k),
        Algorithm::General => colour_general_2k2(g, k),
        Algorithm::Refined => colour_refined(g, k),
        Algorithm::SmallK => colour_small_k(g, k),
    }
}

pub fn colour_auto(g: &Graph, k: usize) -> Result<AutoOutcome> {
    check_k(k)?;
    match select_algorithm(g, k) {
        Some(algorithm) => {
            let (colouring, report) = colour_with(g, k, algorithm)?;
            Ok(AutoOutcome::Coloured { colouring, report })
        }
        None => Ok(AutoOutcome::BelowThreshold { min_degree: g.min_degree() }),
    }
}
