//! Rounding of fractional edge weights to a 0/1 edge selection.
//!
//! Given `z: E -> [0, 1]`, [`round_weights`] produces `x: E -> {0, 1}` with
//!
//! 1. `sum z(v) - 1 < sum x(v) <= sum z(v) + 1` at every vertex;
//! 2. no unselected edge `uv` with both `u` and `v` strictly below their weight sums;
//! 3. the vertices reaching `sum z + 1` each own an odd cycle through them on
//!    which every vertex has an integral weight sum, and these cycles are
//!    pairwise non-adjacent in the graph.
//!
//! Everything runs in exact rational arithmetic and the result is certified
//! against the three conditions before it is returned.

mod cycles;
mod direction;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use cycles::{enforce_condition_ii, resolve_cycles};
pub use direction::{find_kernel_direction, pendant_direction, KernelDirection};

pub type Rational = BigRational;

/// `p / q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Edge weights in `[0, 1]`, indexed by edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    z: Vec<Rational>,
}

impl WeightAssignment {
    pub fn new(z: Vec<Rational>) -> Result<Self> {
        if let Some(e) = z.iter().position(|w| *w < Rational::zero() || *w > Rational::one()) {
            return Err(Error::input(format!("weight {} on edge {e} is outside [0, 1]", z[e])));
        }
        Ok(WeightAssignment { z })
    }

    pub fn constant(edge_count: usize, value: Rational) -> Result<Self> {
        Self::new(vec![value; edge_count])
    }

    pub fn weights(&self) -> &[Rational] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

/// A vertex whose rounded sum exceeds its weight sum by one, with the odd
/// cycle (as an edge sequence starting at the vertex) that certifies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exceptional {
    pub vertex: usize,
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingResult {
    pub x: Vec<bool>,
    pub exceptional: Vec<Exceptional>,
}

impl RoundingResult {
    /// Indices of edges with `x = 1`.
    pub fn selected(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&e| self.x[e]).collect()
    }
}

/// The subgraph of edges flagged `active`, over the vertex set of `graph`.
#[derive(Debug, Clone, Copy)]
pub struct SupportView<'a> {
    pub graph: &'a Graph,
    pub active: &'a [bool],
}

impl<'a> SupportView<'a> {
    pub fn new(graph: &'a Graph, active: &'a [bool]) -> Self {
        assert_eq!(graph.edge_count(), active.len());
        SupportView { graph, active }
    }

    pub fn edges_at(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph
            .adjacency(v)
            .iter()
            .copied()
            .filter(|&(_, e)| self.active[e])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges_at(v).count()
    }
}

/// Mutable state of the pipeline: current fractional values and the support.
struct Rounder<'a> {
    graph: &'a Graph,
    x: Vec<Rational>,
    active: Vec<bool>,
    active_degree: Vec<usize>,
}

impl<'a> Rounder<'a> {
    fn new(graph: &'a Graph, z: &WeightAssignment) -> Self {
        let x = z.weights().to_vec();
        let active: Vec<bool> = x.iter().map(|w| !w.is_integer()).collect();
        let mut active_degree = vec![0; graph.vertex_count()];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            if active[e] {
                active_degree[u] += 1;
                active_degree[v] += 1;
            }
        }
        Rounder {
            graph,
            x,
            active,
            active_degree,
        }
    }

    fn retire(&mut self, edges: &[usize]) {
        for &e in edges {
            if std::mem::replace(&mut self.active[e], false) {
                let (u, v) = self.graph.edge(e);
                self.active_degree[u] -= 1;
                self.active_degree[v] -= 1;
            }
        }
    }

    fn step(&mut self, d: &KernelDirection) -> Result<()> {
        let fixed = direction::saturate(&mut self.x, d);
        if fixed.is_empty() {
            return Err(Error::invariant("saturation made no edge integral"));
        }
        self.retire(&fixed);
        Ok(())
    }

    /// Saturates kernel directions until every support component is a tree
    /// or has a single odd cycle. A component found without a direction
    /// never regains one, so its vertices are skipped afterwards.
    fn saturate_kernel(&mut self) -> Result<()> {
        let n = self.graph.vertex_count();
        let mut bfs = direction::Bfs::new(n);
        let mut settled = vec![false; n];
        loop {
            let mut progressed = false;
            for root in 0..n {
                while !settled[root] && self.active_degree[root] > 0 {
                    let view = SupportView::new(self.graph, &self.active);
                    match direction::search_kernel(&view, root, &mut bfs) {
                        Some(d) => {
                            self.step(&d)?;
                            progressed = true;
                        }
                        None => {
                            for &v in &bfs.order {
                                settled[v] = true;
                            }
                        }
                    }
                }
            }
            if !progressed {
                return Ok(());
            }
        }
    }

    /// Saturates pendant directions until every component is an odd cycle or
    /// a single edge.
    fn saturate_pendants(&mut self) -> Result<()> {
        let mut bfs = direction::Bfs::new(self.graph.vertex_count());
        while let Some(root) = self.pendant_root() {
            let view = SupportView::new(self.graph, &self.active);
            let d = direction::pendant_with(&view, root, &mut bfs)?;
            self.step(&d)?;
        }
        Ok(())
    }

    /// Smallest vertex of the first support component holding both a leaf
    /// and a vertex of degree at least two.
    fn pendant_root(&self) -> Option<usize> {
        let n = self.graph.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        for root in 0..n {
            if seen[root] || self.active_degree[root] == 0 {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let (mut leaf, mut internal) = (false, false);
            while let Some(v) = stack.pop() {
                match self.active_degree[v] {
                    1 => leaf = true,
                    _ => internal = true,
                }
                for &(w, e) in self.graph.adjacency(v) {
                    if self.active[e] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if leaf && internal {
                return Some(root);
            }
        }
        None
    }

    fn close_isolated_edges(&mut self) {
        let lonely: Vec<usize> = (0..self.graph.edge_count())
            .filter(|&e| {
                let (u, v) = self.graph.edge(e);
                self.active[e] && self.active_degree[u] == 1 && self.active_degree[v] == 1
            })
            .collect();
        for &e in &lonely {
            self.x[e] = Rational::one();
        }
        self.retire(&lonely);
    }
}

/// Rounds `z` to a 0/1 selection satisfying the three conditions listed in the
/// module documentation.
pub fn round_weights(g: &Graph, z: &WeightAssignment) -> Result<RoundingResult> {
    if z.len() != g.edge_count() {
        return Err(Error::input(format!(
            "{} weights for {} edges",
            z.len(),
            g.edge_count()
        )));
    }
    let mut r = Rounder::new(g, z);
    r.saturate_kernel()?;
    r.saturate_pendants()?;
    r.close_isolated_edges();
    let mut x = r.x;
    let exceptional = resolve_cycles(g, &mut x)?;
    let mut x: Vec<bool> = x.iter().map(|v| v.is_one()).collect();
    enforce_condition_ii(g, z, &mut x);
    let result = RoundingResult { x, exceptional };
    certify(g, z, &result).map_err(Error::Invariant)?;
    Ok(result)
}

fn weight_sums(g: &Graph, z: &WeightAssignment) -> Vec<Rational> {
    let mut sums = vec![Rational::zero(); g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        sums[u] += &z.weights()[e];
        sums[v] += &z.weights()[e];
    }
    sums
}

fn selection_sums(g: &Graph, x: &[bool]) -> Vec<usize> {
    let mut sums = vec![0usize; g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if x[e] {
            sums[u] += 1;
            sums[v] += 1;
        }
    }
    sums
}

/// Checks the three rounding conditions exactly; the error names the first
/// violation found.
pub fn certify(g: &Graph, z: &WeightAssignment, result: &RoundingResult) -> Result<(), String> {
    let n = g.vertex_count();
    if result.x.len() != g.edge_count() {
        return Err("selection length differs from edge count".into());
    }
    let zs = weight_sums(g, z);
    let xs: Vec<Rational> = selection_sums(g, &result.x)
        .into_iter()
        .map(|s| Rational::from_integer(BigInt::from(s)))
        .collect();
    let one = Rational::one();
    for v in 0..n {
        if !(&zs[v] - &one < xs[v] && xs[v] <= &zs[v] + &one) {
            return Err(format!("condition (i) fails at vertex {v}: x-sum {} vs z-sum {}", xs[v], zs[v]));
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !result.x[e] && xs[u] < zs[u] && xs[v] < zs[v] {
            return Err(format!("condition (ii) fails on edge {e} = ({u}, {v})"));
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut listed = vec![false; n];
    for (i, ex) in result.exceptional.iter().enumerate() {
        if ex.vertex >= n || std::mem::replace(&mut listed[ex.vertex], true) {
            return Err(format!("exceptional vertex {} listed twice or out of range", ex.vertex));
        }
        let vertices = cycle_vertices(g, &ex.cycle)
            .ok_or_else(|| format!("ledger entry for {} is not a cycle", ex.vertex))?;
        if vertices.len() % 2 == 0 {
            return Err(format!("cycle of vertex {} has even length", ex.vertex));
        }
        if !vertices.contains(&ex.vertex) {
            return Err(format!("cycle of vertex {} misses it", ex.vertex));
        }
        for &u in &vertices {
            if !zs[u].is_integer() {
                return Err(format!("cycle of vertex {} passes {u} with non-integral weight sum", ex.vertex));
            }
            if owner[u].replace(i).is_some() {
                return Err(format!("ledger cycles overlap at vertex {u}"));
            }
        }
    }
    for (u, v) in g.edges().iter().copied() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            if a != b {
                return Err(format!("ledger cycles {a} and {b} joined by edge ({u}, {v})"));
            }
        }
    }
    for v in 0..n {
        let exceeds = xs[v] == &zs[v] + &one;
        if exceeds != listed[v] {
            return Err(format!("vertex {v}: excess {exceeds} but listed {}", listed[v]));
        }
    }
    Ok(())
}

/// Vertex set of an edge list forming one simple cycle, if it does.
fn cycle_vertices(g: &Graph, edges: &[usize]) -> Option<Vec<usize>> {
    if edges.len() < 3 || edges.iter().any(|&e| e >= g.edge_count()) {
        return None;
    }
    let (start, mut v) = g.edge(edges[0]);
    let mut vertices = vec![start];
    for &e in &edges[1..] {
        let (a, b) = g.edge(e);
        if vertices.contains(&v) {
            return None;
        }
        vertices.push(v);
        v = if a == v {
            b
        } else if b == v {
            a
        } else {
            return None;
        };
    }
    (v == start).then_some(vertices)
}
