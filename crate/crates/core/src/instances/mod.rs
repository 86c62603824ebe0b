//! Test instances: the two lower-bound families, seeded random graphs with a
//! prescribed minimum degree, and an exhaustive search oracle.

mod oracle;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use oracle::{exhaustive_search, pigeonhole_blocked, SearchOutcome, DEFAULT_NODE_LIMIT};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `K_{a,a}` with `a = k² - k`, minus the edge joining vertex 0 to vertex `a`.
/// Its minimum degree `k² - k - 1` is too small for `k + 1` colours to share
/// the edges at the two endpoints of the missing edge.
pub fn bipartite_lower_bound(k: usize) -> Result<Graph> {
    check_k(k)?;
    let a = k * k - k;
    let pairs: Vec<(usize, usize)> = (0..a)
        .flat_map(|i| (0..a).map(move |j| (i, a + j)))
        .filter(|&(i, j)| (i, j) != (0, a))
        .collect();
    Ok(Graph::new(2 * a, &pairs)?)
}

/// The complete graph on `N = k² + 1` vertices minus the Hamilton cycle
/// `0, 1, ..., N-1, 0`, plus an apex `N` adjacent to all of them.
pub fn general_lower_bound(k: usize) -> Result<Graph> {
    check_k(k)?;
    let n = k * k + 1;
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let on_cycle = v == u + 1 || (u == 0 && v == n - 1);
            if !on_cycle {
                pairs.push((u, v));
            }
        }
    }
    pairs.extend((0..n).map(|v| (v, n)));
    Ok(Graph::new(n + 1, &pairs)?)
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::input(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// A seeded random graph on `n` vertices with minimum degree `delta`.
///
/// Vertices below `delta` are topped up one random edge at a time, preferring
/// partners that are also below `delta`; then `n / 2` extra random edges are
/// added away from one vertex of degree exactly `delta`, so the minimum degree
/// stays exactly `delta` whenever the top-up leaves such a vertex. With
/// `bipartite`, vertices `0..n/2` and `n/2..n` form the two sides and every
/// edge crosses.
pub fn random_min_degree_graph(n: usize, delta: usize, bipartite: bool, seed: u64) -> Result<Graph> {
    random_graph_with_extra(n, delta, bipartite, n / 2, seed)
}

/// As [`random_min_degree_graph`] with an explicit number of extra edges.
pub fn random_graph_with_extra(
    n: usize,
    delta: usize,
    bipartite: bool,
    extra: usize,
    seed: u64,
) -> Result<Graph> {
    let half = n / 2;
    let side = |v: usize| bipartite && v >= half;
    if bipartite {
        if half < delta || n - half < delta {
            return Err(Error::input(format!(
                "sides of {half} and {} vertices cannot reach degree {delta}",
                n - half
            )));
        }
    } else if n <= delta {
        return Err(Error::input(format!("{n} vertices cannot reach degree {delta}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacent = vec![vec![false; n]; n];
    let mut degree = vec![0usize; n];
    let mut pairs = Vec::new();
    let can_join = |adjacent: &Vec<Vec<bool>>, u: usize, v: usize| {
        u != v && !adjacent[u][v] && (!bipartite || side(u) != side(v))
    };

    let mut deficient: Vec<usize> = (0..n).filter(|&v| degree[v] < delta).collect();
    while !deficient.is_empty() {
        let u = *deficient.choose(&mut rng).expect("non-empty");
        let mut partners: Vec<usize> = (0..n)
            .filter(|&v| can_join(&adjacent, u, v) && degree[v] < delta)
            .collect();
        if partners.is_empty() {
            partners = (0..n).filter(|&v| can_join(&adjacent, u, v)).collect();
        }
        let v = *partners.choose(&mut rng).ok_or_else(|| {
            Error::invariant(format!("vertex {u} has no free partner"))
        })?;
        adjacent[u][v] = true;
        adjacent[v][u] = true;
        degree[u] += 1;
        degree[v] += 1;
        pairs.push((u.min(v), u.max(v)));
        deficient.retain(|&w| degree[w] < delta);
    }

    let protected = (0..n).find(|&v| degree[v] == delta);
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 20 * extra + 100 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if Some(u) == protected || Some(v) == protected || !can_join(&adjacent, u, v) {
            continue;
        }
        adjacent[u][v] = true;
        adjacent[v][u] = true;
        pairs.push((u.min(v), u.max(v)));
        added += 1;
    }
    pairs.sort_unstable();
    Ok(Graph::new(n, &pairs)?)
}
