//! Transforms that confine every degree to
//! `S_k = { i : k² <= i < 2k², i ≡ k-1 (mod k) }` while keeping the
//! per-colour cap `floor(d/k)` of each original vertex, so that a colouring
//! of the transformed graph restricts to one of the original.

use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `k` for which [`raise_to_sk`] is allowed; each doubling round
/// doubles the graph and up to `k - 1` rounds happen.
pub const MAX_LIFT_K: usize = 4;

pub fn in_s_k(d: usize, k: usize) -> bool {
    k * k <= d && d < 2 * k * k && d % k == k - 1
}

/// The members of `S_k` in increasing order.
pub fn s_k(k: usize) -> Vec<usize> {
    (k * k..2 * k * k).filter(|&d| in_s_k(d, k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTrace {
    /// Original vertex of every vertex of the split graph.
    pub origin: Vec<usize>,
    /// Original edge of every edge of the split graph.
    pub edge_bijection: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftTrace {
    pub doublings: usize,
    /// Image of every edge of the input graph in the lifted graph.
    pub embedding: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub split: SplitTrace,
    pub lift: LiftTrace,
}

fn check_min_degree(g: &Graph, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::input(format!("k must be at least 2, got {k}")));
    }
    if g.vertex_count() > 0 && g.min_degree() < k * k {
        return Err(Error::precondition(format!(
            "minimum degree {} is below k² = {}",
            g.min_degree(),
            k * k
        )));
    }
    Ok(())
}

/// Splits every vertex of degree `n·k² + d` with `n >= 1` and `k² <= d < 2k²`
/// into `n + 1` vertices: the original keeps its `d` lowest neighbours and
/// each new vertex takes the next `k²`. Edge indices are unchanged.
pub fn split_high_degree(g: &Graph, k: usize) -> Result<(Graph, SplitTrace)> {
    check_min_degree(g, k)?;
    let kk = k * k;
    let mut pairs = g.edges().to_vec();
    let mut origin: Vec<usize> = (0..g.vertex_count()).collect();
    for v in 0..g.vertex_count() {
        let degree = g.degree(v);
        if degree < 2 * kk {
            continue;
        }
        let parts = degree / kk - 1;
        let keep = degree - parts * kk;
        let mut around: Vec<(usize, usize)> = g.adjacency(v).to_vec();
        around.sort_unstable();
        for (j, &(_, e)) in around.iter().enumerate().skip(keep) {
            let part = origin.len() + (j - keep) / kk;
            let (a, b) = pairs[e];
            pairs[e] = if a == v { (part, b) } else { (a, part) };
        }
        origin.extend(std::iter::repeat_n(v, parts));
    }
    let split = Graph::new(origin.len(), &pairs)?;
    let edge_bijection = (0..g.edge_count()).collect();
    Ok((split, SplitTrace { origin, edge_bijection }))
}

/// Repeatedly doubles the graph, joining each vertex whose degree is outside
/// `S_k` to its twin in the new copy, until every degree lies in `S_k`.
///
/// In each round the copy's edges follow the current edges, then come the
/// twin edges `(v, v + N)` in increasing `v`. The input graph keeps its
/// vertex and edge indices.
pub fn raise_to_sk(g: &Graph, k: usize) -> Result<(Graph, LiftTrace)> {
    check_min_degree(g, k)?;
    if k > MAX_LIFT_K {
        return Err(Error::input(format!(
            "lifting is limited to k <= {MAX_LIFT_K}, got {k}"
        )));
    }
    if g.max_degree() >= 2 * k * k {
        return Err(Error::precondition(format!(
            "maximum degree {} is not below 2k² = {}",
            g.max_degree(),
            2 * k * k
        )));
    }
    let mut current = g.clone();
    let mut doublings = 0;
    loop {
        let outside: Vec<usize> = (0..current.vertex_count())
            .filter(|&v| !in_s_k(current.degree(v), k))
            .collect();
        if outside.is_empty() {
            break;
        }
        if doublings == k - 1 {
            return Err(Error::invariant(format!(
                "degrees still outside S_{k} after {doublings} doublings"
            )));
        }
        let n = current.vertex_count();
        let mut pairs = current.edges().to_vec();
        pairs.extend(current.edges().iter().map(|&(u, v)| (u + n, v + n)));
        pairs.extend(outside.iter().map(|&v| (v, v + n)));
        current = Graph::new(2 * n, &pairs)?;
        doublings += 1;
    }
    let embedding = (0..g.edge_count()).collect();
    Ok((current, LiftTrace { doublings, embedding }))
}

/// Splits, then lifts: the result has every degree in `S_k`.
pub fn reduce_to_sk(g: &Graph, k: usize) -> Result<(Graph, ReductionTrace)> {
    let (split, split_trace) = split_high_degree(g, k)?;
    let (lifted, lift) = raise_to_sk(&split, k)?;
    Ok((lifted, ReductionTrace { split: split_trace, lift }))
}

impl SplitTrace {
    pub fn pull_back(&self, c: &EdgeColouring) -> Result<EdgeColouring> {
        if c.len() != self.edge_bijection.len() {
            return Err(Error::input(format!(
                "colouring has {} edges, split graph has {}",
                c.len(),
                self.edge_bijection.len()
            )));
        }
        let mut colours = vec![0; c.len()];
        for (e, &original) in self.edge_bijection.iter().enumerate() {
            colours[original] = c.colour(e);
        }
        EdgeColouring::new(colours, c.colour_count())
    }
}

impl LiftTrace {
    pub fn pull_back(&self, c: &EdgeColouring) -> Result<EdgeColouring> {
        if let Some(&e) = self.embedding.iter().find(|&&e| e >= c.len()) {
            return Err(Error::input(format!(
                "embedded edge {e} outside a colouring of {} edges",
                c.len()
            )));
        }
        let colours = self.embedding.iter().map(|&e| c.colour(e)).collect();
        EdgeColouring::new(colours, c.colour_count())
    }
}

/// Restricts a colouring of the reduced graph to the original graph.
pub fn pull_back_colouring(c: &EdgeColouring, trace: &ReductionTrace) -> Result<EdgeColouring> {
    trace.split.pull_back(&trace.lift.pull_back(c)?)
}
