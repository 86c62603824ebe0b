use crate::error::{Error, Result};
use crate::euler_split::{Bicolouring, Side};
use crate::graph::{components, Graph};

/// A connected component of one colour class of a split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoComponent {
    pub side: Side,
    /// Ascending.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Degree inside the component, aligned with `vertices`.
    pub degrees: Vec<usize>,
}

impl MonoComponent {
    pub fn degree_of(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok().map(|i| self.degrees[i])
    }
}

fn mono_components(h: &Graph, split: &Bicolouring) -> Vec<MonoComponent> {
    let mut out = Vec::new();
    for side in [Side::Blue, Side::Red] {
        let (class, to_parent) = h.edge_subgraph(&split.class(side));
        for vertices in components(&class) {
            if class.degree(vertices[0]) == 0 {
                continue;
            }
            let degrees = vertices.iter().map(|&v| class.degree(v)).collect();
            let mut edges: Vec<usize> = vertices
                .iter()
                .flat_map(|&v| class.adjacency(v).iter().map(|&(_, e)| to_parent[e]))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            out.push(MonoComponent { side, vertices, edges, degrees });
        }
    }
    out
}

/// Vertices reachable from `v` along edges of colour `side`.
fn reach(h: &Graph, split: &Bicolouring, v: usize, side: Side) -> Vec<bool> {
    let mut seen = vec![false; h.vertex_count()];
    let mut stack = vec![v];
    seen[v] = true;
    while let Some(u) = stack.pop() {
        for &(w, e) in h.adjacency(u) {
            if split.side[e] == side && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Recolours single edges until no monochromatic component satisfies
/// `is_bad`.
///
/// Each pass takes the first bad component (blue before red, then by smallest
/// vertex), its vertex `v = pivot(component)` and the two lowest neighbours
/// `u1 < u2` of `v` inside it. The edge `v u1` moves to the other colour,
/// unless `u1` is in `v`'s component of the other colour while `u2` is not, in
/// which case `v u2` moves. The number of bad components must drop on every
/// pass; the returned list holds the count before each pass and the final 0.
pub fn eliminate_bad_components(
    h: &Graph,
    split: &mut Bicolouring,
    is_bad: impl Fn(&MonoComponent) -> bool,
    pivot: impl Fn(&MonoComponent) -> usize,
) -> Result<Vec<usize>> {
    let mut history = Vec::new();
    loop {
        let bad: Vec<MonoComponent> = mono_components(h, split).into_iter().filter(&is_bad).collect();
        if let Some(&previous) = history.last() {
            if bad.len() >= previous {
                return Err(Error::invariant(format!(
                    "bad monochromatic components went from {previous} to {}",
                    bad.len()
                )));
            }
        }
        history.push(bad.len());
        let Some(target) = bad.first() else {
            return Ok(history);
        };
        let v = pivot(target);
        let mut around: Vec<(usize, usize)> = h
            .adjacency(v)
            .iter()
            .copied()
            .filter(|&(_, e)| split.side[e] == target.side)
            .collect();
        around.sort_unstable();
        let [(u1, e1), (u2, e2)] = around[..2] else {
            return Err(Error::invariant(format!(
                "vertex {v} has fewer than two neighbours in its bad component"
            )));
        };
        let other = reach(h, split, v, target.side.other());
        let flip = if other[u1] && !other[u2] { e2 } else { e1 };
        split.side[flip] = split.side[flip].other();
    }
}
