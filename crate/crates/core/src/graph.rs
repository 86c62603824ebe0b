use std::collections::{HashSet, VecDeque};

use crate::error::{Error, GraphError, Result};

/// An immutable simple undirected graph on dense vertex and edge indices.
///
/// Adjacency lists hold `(neighbour, edge index)` pairs in increasing edge
/// index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and indices out of range.
    pub fn new(vertex_count: usize, edge_pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edge_pairs.len());
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (index, &(u, v)) in edge_pairs.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::OutOfRange { u, v, vertex_count });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u].push((v, index));
            adjacency[v].push((u, index));
        }
        Ok(Graph {
            vertex_count,
            edges: edge_pairs.to_vec(),
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The endpoint of `e` other than `v`.
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn adjacency(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Minimum degree; 0 for the graph without vertices.
    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].iter().any(|&(w, _)| w == b)
    }

    /// The spanning subgraph keeping only `edges` (in the given order).
    ///
    /// Returns the subgraph together with the map from its edge indices to
    /// the indices in `self`.
    pub fn edge_subgraph(&self, edges: &[usize]) -> (Graph, Vec<usize>) {
        let mut adjacency = vec![Vec::new(); self.vertex_count];
        let mut pairs = Vec::with_capacity(edges.len());
        for (index, &e) in edges.iter().enumerate() {
            let (u, v) = self.edges[e];
            adjacency[u].push((v, index));
            adjacency[v].push((u, index));
            pairs.push((u, v));
        }
        let sub = Graph {
            vertex_count: self.vertex_count,
            edges: pairs,
            adjacency,
        };
        (sub, edges.to_vec())
    }
}

/// Connected components, each sorted ascending, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut blocks = Vec::new();
    let mut stack = Vec::new();
    for root in 0..g.vertex_count() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        stack.push(root);
        let mut block = Vec::new();
        while let Some(v) = stack.pop() {
            block.push(v);
            for &(w, _) in g.adjacency(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Result of a bipartiteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// `side[v]` is `false` for the side containing the smallest vertex of each component.
    Sides(Vec<bool>),
    /// Edge sequence of an odd closed cycle.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Sides(_))
    }
}

pub fn is_bipartite(g: &Graph) -> Bipartition {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].unwrap();
            for &(w, e) in g.adjacency(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        parent[w] = Some((v, e));
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                    Some(sw) if sw == sv => {
                        return Bipartition::OddCycle(tree_cycle(&parent, &depth, v, w, e));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartition::Sides(side.into_iter().map(Option::unwrap).collect())
}

/// The cycle closed by non-tree edge `e = uv` in a rooted tree given by parent pointers.
/// Edges are listed starting with `e`, going from `v` up to the common ancestor and
/// back down to `u`.
pub(crate) fn tree_cycle(
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
    u: usize,
    v: usize,
    e: usize,
) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut up_u = Vec::new();
    let mut up_v = Vec::new();
    while depth[a] > depth[b] {
        let (p, pe) = parent[a].expect("non-root has a parent");
        up_u.push(pe);
        a = p;
    }
    while depth[b] > depth[a] {
        let (p, pe) = parent[b].expect("non-root has a parent");
        up_v.push(pe);
        b = p;
    }
    while a != b {
        let (pa, ea) = parent[a].expect("non-root has a parent");
        let (pb, eb) = parent[b].expect("non-root has a parent");
        up_u.push(ea);
        up_v.push(eb);
        a = pa;
        b = pb;
    }
    let mut cycle = Vec::with_capacity(1 + up_u.len() + up_v.len());
    cycle.push(e);
    cycle.extend(up_v);
    cycle.extend(up_u.into_iter().rev());
    cycle
}

/// A closed walk: `edges[i]` joins `vertices[i]` and `vertices[i + 1]`, and
/// `vertices` starts and ends at the same vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Eulerian circuit of a connected graph with all degrees even, starting at
/// the smallest vertex.
pub fn eulerian_circuit(g: &Graph) -> Result<Circuit> {
    eulerian_circuit_from(g, 0)
}

/// Eulerian circuit starting (and ending) at `start`. Hierholzer's algorithm,
/// always leaving a vertex along its lowest-indexed unused edge.
pub fn eulerian_circuit_from(g: &Graph, start: usize) -> Result<Circuit> {
    if g.edge_count() == 0 {
        return Err(Error::precondition("Eulerian circuit needs at least one edge"));
    }
    if start >= g.vertex_count() {
        return Err(Error::input(format!("start vertex {start} out of range")));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::precondition(format!("vertex {v} has odd degree {}", g.degree(v))));
    }
    if components(g).len() != 1 {
        return Err(Error::precondition("graph is disconnected"));
    }
    let mut used = vec![false; g.edge_count()];
    let mut next = vec![0usize; g.vertex_count()];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut vertices = Vec::with_capacity(g.edge_count() + 1);
    let mut edges = Vec::with_capacity(g.edge_count());
    while let Some(&(v, via)) = stack.last() {
        let adj = g.adjacency(v);
        while next[v] < adj.len() && used[adj[next[v]].1] {
            next[v] += 1;
        }
        if let Some(&(w, e)) = adj.get(next[v]) {
            used[e] = true;
            stack.push((w, Some(e)));
        } else {
            stack.pop();
            vertices.push(v);
            if let Some(e) = via {
                edges.push(e);
            }
        }
    }
    vertices.reverse();
    edges.reverse();
    Ok(Circuit { vertices, edges })
}
