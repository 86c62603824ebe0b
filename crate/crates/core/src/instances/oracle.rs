use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { colouring: EdgeColouring, node_count: u64 },
    /// No colouring was found. Without `limit_hit` this certifies that none
    /// exists.
    Exhausted { node_count: u64, limit_hit: bool },
}

impl SearchOutcome {
    pub fn node_count(&self) -> u64 {
        match self {
            SearchOutcome::Found { node_count, .. } | SearchOutcome::Exhausted { node_count, .. } => {
                *node_count
            }
        }
    }
}

/// The first vertex whose edges cannot fit under the caps at all:
/// `colour_count * floor(d/k) < d`.
pub fn pigeonhole_blocked(g: &Graph, k: usize, colour_count: u32) -> Option<usize> {
    (0..g.vertex_count()).find(|&v| {
        let d = g.degree(v);
        colour_count as usize * (d / k) < d
    })
}

/// Backtracking search for a colouring with `colour_count` colours that uses
/// each colour at most `floor(d(v)/k)` times at every vertex.
///
/// Edges are taken by non-increasing smaller endpoint degree (ties by index);
/// an edge may only open the lowest unused colour, which removes colour
/// permutations. Every colour placement counts as one node.
pub fn exhaustive_search(g: &Graph, k: usize, colour_count: u32, node_limit: u64) -> Result<SearchOutcome> {
    if k < 2 {
        return Err(Error::input(format!("k must be at least 2, got {k}")));
    }
    if colour_count == 0 {
        return Err(Error::input("colour count must be positive"));
    }
    if pigeonhole_blocked(g, k, colour_count).is_some() {
        return Ok(SearchOutcome::Exhausted { node_count: 0, limit_hit: false });
    }
    let m = g.edge_count();
    let cap: Vec<u32> = (0..g.vertex_count()).map(|v| (g.degree(v) / k) as u32).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edge(e);
        (std::cmp::Reverse(g.degree(u).min(g.degree(v))), e)
    });

    let palette = colour_count as usize;
    let mut count = vec![0u32; g.vertex_count() * (palette + 1)];
    let slot = |v: usize, c: u32| v * (palette + 1) + c as usize;
    let mut choice = vec![0u32; m];
    let mut opened = vec![0u32; m + 1];
    let mut nodes = 0u64;
    let mut t = 0usize;
    while t < m {
        let (u, v) = g.edge(order[t]);
        if choice[t] != 0 {
            count[slot(u, choice[t])] -= 1;
            count[slot(v, choice[t])] -= 1;
        }
        let highest = colour_count.min(opened[t] + 1);
        let next = (choice[t] + 1..=highest)
            .find(|&c| count[slot(u, c)] < cap[u] && count[slot(v, c)] < cap[v]);
        match next {
            Some(c) => {
                if nodes == node_limit {
                    return Ok(SearchOutcome::Exhausted { node_count: nodes, limit_hit: true });
                }
                nodes += 1;
                choice[t] = c;
                count[slot(u, c)] += 1;
                count[slot(v, c)] += 1;
                opened[t + 1] = opened[t].max(c);
                t += 1;
            }
            None => {
                choice[t] = 0;
                if t == 0 {
                    return Ok(SearchOutcome::Exhausted { node_count: nodes, limit_hit: false });
                }
                t -= 1;
            }
        }
    }
    let mut colours = vec![0u32; m];
    for (t, &e) in order.iter().enumerate() {
        colours[e] = choice[t];
    }
    let colouring = EdgeColouring::new(colours, colour_count)?;
    Ok(SearchOutcome::Found { colouring, node_count: nodes })
}
