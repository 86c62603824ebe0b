//! Balanced two-colourings from Eulerian circuits.
//!
//! Per connected component, colouring the edges of an Eulerian circuit
//! alternately leaves every vertex with at most `ceil(d/2)` edges of either
//! colour. Odd-degree vertices are first joined to an auxiliary vertex. The
//! one case that cannot be balanced is a component with all degrees even and
//! an odd number of edges: there a single "bad" vertex ends up with `d/2 + 1`
//! red and `d/2 - 1` blue edges.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{components, eulerian_circuit_from, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Blue,
    Red,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Blue => Side::Red,
            Side::Red => Side::Blue,
        }
    }
}

/// Chooses the bad vertex of an all-even component with an odd edge count.
///
/// `rank` returns `None` for vertices that must not be bad; among the allowed
/// ones the lowest rank wins, then the lowest index.
pub trait BadVertexSelector {
    fn rank(&self, v: usize) -> Option<u32>;
}

impl<F: Fn(usize) -> Option<u32>> BadVertexSelector for F {
    fn rank(&self, v: usize) -> Option<u32> {
        self(v)
    }
}

/// Every vertex is allowed, so the smallest one is chosen.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnyVertex;

impl BadVertexSelector for AnyVertex {
    fn rank(&self, _: usize) -> Option<u32> {
        Some(0)
    }
}

/// No vertex is allowed: the split fails if a bad vertex is ever needed.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoVertex;

impl BadVertexSelector for NoVertex {
    fn rank(&self, _: usize) -> Option<u32> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicolouring {
    /// Colour of every edge of the split graph.
    pub side: Vec<Side>,
    /// One entry per component with at least one edge, ordered by smallest
    /// vertex: the bad vertex chosen for it, if any.
    pub bad_vertices: Vec<Option<usize>>,
}

impl Bicolouring {
    /// Edge indices on `side`, ascending.
    pub fn class(&self, side: Side) -> Vec<usize> {
        (0..self.side.len()).filter(|&e| self.side[e] == side).collect()
    }

    /// `(blue, red)` edge counts at every vertex.
    pub fn counts(&self, h: &Graph) -> Vec<(usize, usize)> {
        let mut counts = vec![(0, 0); h.vertex_count()];
        for (e, &(u, v)) in h.edges().iter().enumerate() {
            for w in [u, v] {
                match self.side[e] {
                    Side::Blue => counts[w].0 += 1,
                    Side::Red => counts[w].1 += 1,
                }
            }
        }
        counts
    }

    pub fn bad(&self) -> impl Iterator<Item = usize> + '_ {
        self.bad_vertices.iter().flatten().copied()
    }
}

/// Splits the edges of `h` into blue and red, balanced at every vertex except
/// at most one bad vertex per component, which gets the extra red edge.
pub fn balanced_bicolouring(h: &Graph, selector: &impl BadVertexSelector) -> Result<Bicolouring> {
    let mut side = vec![Side::Blue; h.edge_count()];
    let mut bad_vertices = Vec::new();
    let mut local = vec![usize::MAX; h.vertex_count()];
    for block in components(h) {
        if h.degree(block[0]) == 0 {
            continue;
        }
        for (i, &v) in block.iter().enumerate() {
            local[v] = i;
        }
        let mut edges: Vec<usize> = block
            .iter()
            .flat_map(|&v| h.adjacency(v).iter().map(|&(_, e)| e))
            .collect();
        edges.sort_unstable();
        edges.dedup();

        let odd: Vec<usize> = (0..block.len()).filter(|&i| h.degree(block[i]) % 2 == 1).collect();
        let mut pairs: Vec<(usize, usize)> = edges
            .iter()
            .map(|&e| {
                let (u, v) = h.edge(e);
                (local[u], local[v])
            })
            .collect();
        let (start, bad) = if !odd.is_empty() {
            let aux = block.len();
            pairs.extend(odd.iter().map(|&i| (i, aux)));
            (aux, None)
        } else if edges.len().is_multiple_of(2) {
            (0, None)
        } else {
            let chosen = block
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| selector.rank(v).map(|r| (r, v, i)))
                .min();
            let Some((_, v, i)) = chosen else {
                return Err(Error::SelectorExhausted { vertex: block[0] });
            };
            (i, Some(v))
        };
        let vertex_count = block.len() + usize::from(!odd.is_empty());
        let g = Graph::new(vertex_count, &pairs).map_err(Error::from)?;
        let circuit = eulerian_circuit_from(&g, start)?;
        for (position, &e) in circuit.edges.iter().enumerate() {
            if let Some(&parent) = edges.get(e) {
                side[parent] = if position % 2 == 0 { Side::Red } else { Side::Blue };
            }
        }
        bad_vertices.push(bad);
    }
    Ok(Bicolouring { side, bad_vertices })
}

/// Checks the balance guarantees of a split: `ceil(d/2)` per colour at every
/// vertex, except listed bad vertices with exactly `d/2 + 1` red edges.
pub fn check_balanced(h: &Graph, split: &Bicolouring) -> Result<(), String> {
    if split.side.len() != h.edge_count() {
        return Err("split does not cover every edge".into());
    }
    let mut is_bad = vec![false; h.vertex_count()];
    for v in split.bad() {
        is_bad[v] = true;
    }
    for (v, &(blue, red)) in split.counts(h).iter().enumerate() {
        let d = h.degree(v);
        if is_bad[v] {
            if d % 2 == 1 || red != d / 2 + 1 {
                return Err(format!("bad vertex {v}: degree {d}, {red} red"));
            }
        } else if blue.max(red) > d.div_ceil(2) {
            return Err(format!("vertex {v}: {blue} blue and {red} red of {d}"));
        }
    }
    Ok(())
}
