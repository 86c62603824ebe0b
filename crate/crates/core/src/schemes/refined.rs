use serde::Serialize;

use super::general::weighted_rounds;
use super::{binary_split, require_min_degree, verified, Algorithm, SchemeReport};
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::euler_split::{balanced_bicolouring, Side};
use crate::graph::{components, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinedSummary {
    /// Components whose edges were fixed all at once because every vertex in
    /// them was already special.
    pub settled_components: usize,
    pub largest_settled_component: usize,
    pub special_assignments: usize,
}

/// A binary prefix: the first `len` bits of a colour vector, most
/// significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Prefix {
    len: u32,
    bits: u64,
}

impl Prefix {
    fn extends(self, q: Prefix) -> bool {
        q.len <= self.len && self.bits >> (self.len - q.len) == q.bits
    }
}

/// Colour vectors of length `n` for the edges of `h` (given as `bits[e]`,
/// most significant bit first), built level by level from balanced splits.
///
/// At level `i` the edges sharing a prefix `p` of length `i - 1` are split per
/// component. A forced bad vertex is chosen among vertices not special for
/// any prefix of `p`, gets its extra edge in bit 1, and becomes special for
/// `p·1`. A component whose vertices are all special already has all its
/// remaining bits set to 0 at once; those edges are flagged in `settled`.
pub fn refined_split(h: &Graph, n: u32) -> Result<(Vec<u64>, Vec<bool>, RefinedSummary)> {
    if n == 0 || n > 63 {
        return Err(Error::input(format!("vector length {n} out of range")));
    }
    let m = h.edge_count();
    let mut bits = vec![0u64; m];
    let mut settled = vec![false; m];
    let mut special: Vec<Vec<Prefix>> = vec![Vec::new(); h.vertex_count()];
    let mut summary = RefinedSummary {
        settled_components: 0,
        largest_settled_component: 0,
        special_assignments: 0,
    };
    for level in 1..=n {
        let mut groups: Vec<(u64, usize)> = (0..m)
            .filter(|&e| !settled[e])
            .map(|e| (bits[e], e))
            .collect();
        groups.sort_unstable();
        let mut start = 0;
        while start < groups.len() {
            let code = groups[start].0;
            let end = start + groups[start..].iter().take_while(|g| g.0 == code).count();
            let edges: Vec<usize> = groups[start..end].iter().map(|g| g.1).collect();
            start = end;
            let p = Prefix { len: level - 1, bits: code };
            let is_special = |v: usize| special[v].iter().any(|&q| p.extends(q));

            let (hp, to_parent) = h.edge_subgraph(&edges);
            let mut split_edges = Vec::new();
            for block in components(&hp) {
                if hp.degree(block[0]) == 0 {
                    continue;
                }
                let block_edges = block
                    .iter()
                    .flat_map(|&v| hp.adjacency(v).iter().map(|&(_, e)| e));
                if block.iter().all(|&v| is_special(v)) {
                    if block.len() > n as usize {
                        return Err(Error::invariant(format!(
                            "component of {} all-special vertices exceeds {n}",
                            block.len()
                        )));
                    }
                    for e in block_edges {
                        let parent = to_parent[e];
                        if !settled[parent] {
                            settled[parent] = true;
                            bits[parent] <<= n - level + 1;
                        }
                    }
                    summary.settled_components += 1;
                    summary.largest_settled_component =
                        summary.largest_settled_component.max(block.len());
                } else {
                    split_edges.extend(block_edges);
                }
            }
            split_edges.sort_unstable();
            split_edges.dedup();
            if split_edges.is_empty() {
                continue;
            }
            let parents: Vec<usize> = split_edges.iter().map(|&e| to_parent[e]).collect();
            let (sub, _) = h.edge_subgraph(&parents);
            let selector = |v: usize| (!is_special(v)).then_some(0);
            let split = balanced_bicolouring(&sub, &selector)?;
            for (local, &parent) in parents.iter().enumerate() {
                bits[parent] = bits[parent] << 1 | u64::from(split.side[local] == Side::Red);
            }
            let next = Prefix { len: level, bits: code << 1 | 1 };
            for v in split.bad() {
                special[v].push(next);
                summary.special_assignments += 1;
            }
        }
    }
    for (v, prefixes) in special.iter().enumerate() {
        for (a, &q) in prefixes.iter().enumerate() {
            if prefixes[..a].iter().any(|&r| q.extends(r) || r.extends(q)) {
                return Err(Error::invariant(format!(
                    "vertex {v} is special for two prefixes of one colour"
                )));
            }
        }
    }
    Ok((bits, settled, summary))
}

/// Checks the per-vertex bound of the binary levels for every colour vector
/// `a`: if all `a`-coloured edges at `v` came from splits, their number is at
/// most `(d_H(v) - 1)/2^n + 3/2`; edges fixed at once number fewer than `n`.
fn check_vector_bound(h: &Graph, n: u32, bits: &[u64], settled: &[bool]) -> Result<()> {
    let size = 1usize << n;
    let mut count = vec![vec![0usize; size]; h.vertex_count()];
    let mut from_settled = vec![vec![false; size]; h.vertex_count()];
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        for w in [u, v] {
            count[w][bits[e] as usize] += 1;
            from_settled[w][bits[e] as usize] |= settled[e];
        }
    }
    for v in 0..h.vertex_count() {
        let d = h.degree(v) as i64;
        for a in 0..size {
            let c = count[v][a] as i64;
            let ok = if from_settled[v][a] {
                c < n as i64
            } else {
                (c << (n + 1)) <= 2 * (d - 1) + 3 * (1i64 << n)
            };
            if !ok {
                return Err(Error::invariant(format!(
                    "vertex {v} has {c} edges of vector {a:0width$b} out of {d}",
                    width = n as usize
                )));
            }
        }
    }
    Ok(())
}

/// Colours a graph of minimum degree at least `(3k² + km + k)/2`, where
/// `k + 1 = 2^n + m`: `m` rounding rounds as in the general scheme, then the
/// remaining edges get one of `2^n` binary vectors from [`refined_split`],
/// vector `w` becoming colour `m + 1 + w`.
pub fn colour_refined(g: &Graph, k: usize) -> Result<(EdgeColouring, SchemeReport)> {
    require_min_degree(g, Algorithm::Refined, k)?;
    let (n, m) = binary_split(k);
    let mut report = SchemeReport::new(Algorithm::Refined, g, k);
    let mut colours = vec![0u32; g.edge_count()];
    weighted_rounds(g, k, m, &mut colours, &mut report)?;
    let open: Vec<usize> = (0..colours.len()).filter(|&e| colours[e] == 0).collect();
    let (h, to_parent) = g.edge_subgraph(&open);
    let (bits, settled, summary) = refined_split(&h, n)?;
    check_vector_bound(&h, n, &bits, &settled)?;
    for (e, &parent) in to_parent.iter().enumerate() {
        colours[parent] = (m + 1) as u32 + bits[e] as u32;
    }
    report.refined = Some(summary);
    let c = verified(g, colours, k, &mut report)?;
    Ok((c, report))
}
