//! Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails. Pass criterion numbers as arguments to run a subset.
//!
//! Every check recomputes what it asserts from the raw graph and colouring
//! with its own integer arithmetic rather than trusting the library's
//! verifiers.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use majority_core::instances::{
    bipartite_lower_bound, exhaustive_search, general_lower_bound, pigeonhole_blocked,
    random_min_degree_graph, SearchOutcome, DEFAULT_NODE_LIMIT,
};
use majority_core::reductions::{pull_back_colouring, reduce_to_sk};
use majority_core::rounding::{ratio, round_weights, Exceptional, WeightAssignment};
use majority_core::schemes::{
    binary_split, colour_bipartite, colour_general_2k2, colour_refined, colour_small_k,
    refined_split,
};
use majority_core::{EdgeColouring, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria = [
        Criterion { id: 1, name: "rounding on random weighted graphs", budget: secs(30), run: rounding_suite },
        Criterion { id: 2, name: "rounding against full enumeration", budget: secs(60), run: rounding_enumeration },
        Criterion { id: 3, name: "bipartite scheme", budget: secs(60), run: bipartite_scheme },
        Criterion { id: 4, name: "general scheme with per-round bounds", budget: secs(120), run: general_scheme },
        Criterion { id: 5, name: "refined scheme with vector bound", budget: secs(120), run: refined_scheme },
        Criterion { id: 6, name: "small k at the exact threshold", budget: secs(120), run: small_k_threshold },
        Criterion { id: 7, name: "lower bounds certified infeasible", budget: secs(10), run: lower_bounds },
        Criterion { id: 8, name: "reduction round trips", budget: secs(60), run: reduction_round_trips },
        Criterion { id: 9, name: "byte-identical reruns", budget: secs(120), run: determinism },
    ];
    let mut failed = 0;
    for c in criteria.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= c.budget => format!("PASS ({detail})"),
            Ok(detail) => format!("FAIL (over time budget; {detail})"),
            Err(why) => format!("FAIL ({why})"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!(
            "criterion {} [{}]: {verdict} in {:.2}s of {}s",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

// ---------------------------------------------------------------------------
// Independent checkers
// ---------------------------------------------------------------------------

/// Per-vertex, per-colour edge counts checked against `count * k <= d(v)`.
fn majority_holds(g: &Graph, colours: &[u32], k: usize) -> Result<(), String> {
    ensure(colours.len() == g.edge_count(), || "colouring length differs from edge count".into())?;
    let mut count: HashMap<(usize, u32), usize> = HashMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = colours[e];
        ensure((1..=k as u32 + 1).contains(&c), || format!("edge {e} has colour {c}"))?;
        *count.entry((u, c)).or_default() += 1;
        *count.entry((v, c)).or_default() += 1;
    }
    for (&(v, c), &n) in &count {
        ensure(n * k <= g.degree(v), || {
            format!("vertex {v} has {n} edges of colour {c} at degree {}", g.degree(v))
        })?;
    }
    Ok(())
}

fn colour_degree(g: &Graph, colours: &[u32], v: usize, keep: impl Fn(u32) -> bool) -> usize {
    g.adjacency(v).iter().filter(|&&(_, e)| keep(colours[e])).count()
}

fn two_colourable(g: &Graph) -> bool {
    let mut side = vec![None; g.vertex_count()];
    for s in 0..g.vertex_count() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let here = side[u].unwrap();
            for &(w, _) in g.adjacency(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!here);
                        stack.push(w);
                    }
                    Some(s) if s == here => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// All weights used here have denominators dividing this.
const SCALE: i64 = 27720;

/// Weight sums per vertex, scaled by [`SCALE`].
fn scaled_sums(g: &Graph, w: &[(i64, i64)]) -> Vec<i64> {
    let mut sums = vec![0; g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (p, q) = w[e];
        sums[u] += p * (SCALE / q);
        sums[v] += p * (SCALE / q);
    }
    sums
}

fn picked_sums(g: &Graph, x: &[bool]) -> Vec<i64> {
    let mut sums = vec![0; g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if x[e] {
            sums[u] += SCALE;
            sums[v] += SCALE;
        }
    }
    sums
}

/// The bounds at every vertex and the closure rule on every edge.
fn bounds_and_closure(g: &Graph, zs: &[i64], xs: &[i64], x: &[bool]) -> Result<(), String> {
    for v in 0..g.vertex_count() {
        ensure(zs[v] - SCALE < xs[v] && xs[v] <= zs[v] + SCALE, || {
            format!("vertex {v}: picked {} against weight {}", xs[v], zs[v])
        })?;
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        ensure(x[e] || !(xs[u] < zs[u] && xs[v] < zs[v]), || {
            format!("edge {e} left out with both ends short")
        })?;
    }
    Ok(())
}

/// Vertex set of a closed trail given as edges, if it is a simple cycle.
fn simple_cycle(g: &Graph, edges: &[usize]) -> Option<Vec<usize>> {
    if edges.len() < 3 || edges.iter().collect::<HashSet<_>>().len() != edges.len() {
        return None;
    }
    let (a, b) = g.edge(*edges.first()?);
    let (c, d) = g.edge(*edges.last()?);
    let start = if a == c || a == d { a } else if b == c || b == d { b } else { return None };
    let mut at = start;
    let mut seen = Vec::new();
    for &e in edges {
        let (p, q) = g.edge(e);
        if seen.contains(&at) {
            return None;
        }
        seen.push(at);
        at = if p == at { q } else if q == at { p } else { return None };
    }
    (at == start).then_some(seen)
}

/// Full check of a rounding: bounds, closure, and a ledger that lists exactly
/// the vertices at the upper bound, each with an odd cycle through it on
/// integral-sum vertices, the distinct cycles pairwise non-adjacent.
fn rounding_holds(g: &Graph, w: &[(i64, i64)], x: &[bool], ledger: &[Exceptional]) -> Result<(), String> {
    let zs = scaled_sums(g, w);
    let xs = picked_sums(g, x);
    bounds_and_closure(g, &zs, &xs, x)?;
    let excess: HashSet<usize> = (0..g.vertex_count()).filter(|&v| xs[v] == zs[v] + SCALE).collect();
    let listed: HashSet<usize> = ledger.iter().map(|l| l.vertex).collect();
    ensure(listed.len() == ledger.len(), || "a vertex is listed twice".into())?;
    ensure(excess == listed, || format!("excess vertices {excess:?} but ledger {listed:?}"))?;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for entry in ledger {
        let mut vs = simple_cycle(g, &entry.cycle).ok_or_else(|| format!("entry {} is not a cycle", entry.vertex))?;
        ensure(vs.len() % 2 == 1, || format!("cycle of {} is even", entry.vertex))?;
        ensure(vs.contains(&entry.vertex), || format!("cycle of {} misses it", entry.vertex))?;
        ensure(vs.iter().all(|&u| zs[u] % SCALE == 0), || {
            format!("cycle of {} has a vertex with fractional sum", entry.vertex)
        })?;
        vs.sort_unstable();
        if !cycles.contains(&vs) {
            cycles.push(vs);
        }
    }
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            let touching = a.iter().any(|&u| b.contains(&u) || b.iter().any(|&v| g.has_edge(u, v)));
            ensure(!touching, || format!("cycles {a:?} and {b:?} are not independent"))?;
        }
    }
    Ok(())
}

fn run_rounding(g: &Graph, w: &[(i64, i64)]) -> Result<(Vec<bool>, Vec<Exceptional>), String> {
    let z = WeightAssignment::new(w.iter().map(|&(p, q)| ratio(p, q)).collect()).map_err(|e| e.to_string())?;
    let r = round_weights(g, &z).map_err(|e| e.to_string())?;
    Ok((r.x, r.exceptional))
}

// ---------------------------------------------------------------------------
// 1. Random weighted graphs
// ---------------------------------------------------------------------------

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64, bipartite: bool) -> Graph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (!bipartite || side[u] != side[v]) && rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::new(n, &pairs).unwrap()
}

/// Weights with denominators up to 12; with `constant`, one weight for all
/// edges, which is where odd cycles of halves show up.
fn random_weights(rng: &mut ChaCha8Rng, g: &Graph, constant: bool) -> Vec<(i64, i64)> {
    let mut draw = || {
        let q = rng.gen_range(1..=12);
        (rng.gen_range(0..=q), q)
    };
    if constant {
        vec![draw(); g.edge_count()]
    } else {
        (0..g.edge_count()).map(|_| draw()).collect()
    }
}

/// Disjoint odd cycles weighted 1/2, joined by a few edges of weight 0 or 1.
fn odd_cycles_of_halves(rng: &mut ChaCha8Rng) -> (Graph, Vec<(i64, i64)>) {
    let mut pairs = Vec::new();
    let mut w = Vec::new();
    let mut n = 0;
    while n < 30 {
        let len = 2 * rng.gen_range(1..=4) + 1;
        for i in 0..len {
            pairs.push((n + i, n + (i + 1) % len));
            w.push((1, 2));
        }
        n += len;
    }
    for _ in 0..rng.gen_range(0..=n / 3) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = (u.min(v), u.max(v));
        if u != v && !pairs.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
            pairs.push(e);
            w.push((rng.gen_range(0..=1), 1));
        }
    }
    (Graph::new(n, &pairs).unwrap(), w)
}

fn rounding_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let (mut bipartite, mut exceptional, mut edges) = (0, 0, 0);
    for trial in 0..500 {
        let (g, w) = if trial % 10 == 3 {
            odd_cycles_of_halves(&mut rng)
        } else {
            let n = rng.gen_range(2..=40);
            let p = rng.gen_range(0.05..0.6);
            let g = gnp(&mut rng, n, p, trial % 4 == 0);
            let w = random_weights(&mut rng, &g, trial % 5 == 1);
            (g, w)
        };
        let (x, ledger) = run_rounding(&g, &w).map_err(|e| format!("trial {trial}: {e}"))?;
        rounding_holds(&g, &w, &x, &ledger).map_err(|e| format!("trial {trial}: {e}"))?;
        if two_colourable(&g) {
            bipartite += 1;
            ensure(ledger.is_empty(), || format!("trial {trial}: bipartite graph with exceptional vertices"))?;
        }
        exceptional += ledger.len();
        edges += g.edge_count();
    }
    Ok(format!("500 graphs, {edges} edges, {bipartite} bipartite, {exceptional} exceptional vertices"))
}

// ---------------------------------------------------------------------------
// 2. Exhaustive enumeration on tiny graphs
// ---------------------------------------------------------------------------

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut mapped: Vec<_> = edges
                .iter()
                .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                .collect();
            mapped.sort_unstable();
            mapped
        })
        .min()
        .unwrap_or_default()
        .into_iter()
        .chain(std::iter::once((n, n)))
        .collect()
}

/// Connected simple graphs with 1..=max_edges edges, one per isomorphism class.
fn connected_graphs(max_edges: usize) -> Vec<Graph> {
    let perms: Vec<Vec<Vec<usize>>> = (0..=max_edges + 1).map(permutations).collect();
    let mut level = vec![(2usize, vec![(0usize, 1usize)])];
    let mut all = level.clone();
    for _ in 1..max_edges {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (n, edges) in &level {
            let mut options: Vec<(usize, (usize, usize))> = (0..*n).map(|u| (n + 1, (u, *n))).collect();
            for u in 0..*n {
                for v in u + 1..*n {
                    if !edges.contains(&(u, v)) {
                        options.push((*n, (u, v)));
                    }
                }
            }
            for (m, e) in options {
                let mut grown = edges.clone();
                grown.push(e);
                if seen.insert(canonical(m, &grown, &perms[m])) {
                    next.push((m, grown));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter().map(|(n, e)| Graph::new(n, &e).unwrap()).collect()
}

/// Simple cycles as (vertex mask, length).
fn cycles_of(g: &Graph) -> Vec<(u32, usize)> {
    fn walk(g: &Graph, start: usize, at: usize, mask: u32, used: u64, len: usize, out: &mut HashSet<(u64, u32, usize)>) {
        for &(w, e) in g.adjacency(at) {
            if used >> e & 1 == 1 {
                continue;
            }
            if w == start && len >= 2 {
                out.insert((used | 1 << e, mask, len + 1));
            } else if w > start && mask >> w & 1 == 0 {
                walk(g, start, w, mask | 1 << w, used | 1 << e, len + 1, out);
            }
        }
    }
    let mut found = HashSet::new();
    for s in 0..g.vertex_count() {
        walk(g, s, s, 1 << s, 0, 0, &mut found);
    }
    found.into_iter().map(|(_, mask, len)| (mask, len)).collect::<HashSet<_>>().into_iter().collect()
}

/// Whether the excess vertices can each be given an admissible cycle, the
/// chosen cycles being equal or independent.
fn cycles_assignable(excess: &[usize], admissible: &[(u32, u32)], chosen: &mut Vec<(u32, u32)>) -> bool {
    let Some((&v, rest)) = excess.split_first() else {
        return true;
    };
    for &(mask, reach) in admissible.iter().filter(|&&(m, _)| m >> v & 1 == 1) {
        let reused = chosen.iter().any(|&(m, _)| m == mask);
        if !reused && chosen.iter().any(|&(m, _)| m & reach != 0) {
            continue;
        }
        if !reused {
            chosen.push((mask, reach));
        }
        let ok = cycles_assignable(rest, admissible, chosen);
        if !reused {
            chosen.pop();
        }
        if ok {
            return true;
        }
    }
    false
}

/// Bitset over all 0/1 selections of `g` satisfying the three conditions.
fn valid_selections(g: &Graph, w: &[(i64, i64)], cycles: &[(u32, usize)], reach: &dyn Fn(u32) -> u32) -> u64 {
    let zs = scaled_sums(g, w);
    let admissible: Vec<(u32, u32)> = cycles
        .iter()
        .filter(|&&(mask, len)| len % 2 == 1 && (0..g.vertex_count()).all(|v| mask >> v & 1 == 0 || zs[v] % SCALE == 0))
        .map(|&(mask, _)| (mask, reach(mask)))
        .collect();
    let mut valid = 0u64;
    for bits in 0..1u64 << g.edge_count() {
        let x: Vec<bool> = (0..g.edge_count()).map(|e| bits >> e & 1 == 1).collect();
        let xs = picked_sums(g, &x);
        if bounds_and_closure(g, &zs, &xs, &x).is_err() {
            continue;
        }
        let excess: Vec<usize> = (0..g.vertex_count()).filter(|&v| xs[v] == zs[v] + SCALE).collect();
        if cycles_assignable(&excess, &admissible, &mut Vec::new()) {
            valid |= 1 << bits;
        }
    }
    valid
}

fn rounding_enumeration() -> Outcome {
    const VALUES: [(i64, i64); 5] = [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)];
    let graphs = connected_graphs(6);
    ensure(graphs.len() == 52, || format!("expected 52 connected graphs, built {}", graphs.len()))?;
    let mut runs = 0u64;
    for (gi, g) in graphs.iter().enumerate() {
        let cycles = cycles_of(g);
        let closed = |mask: u32| {
            (0..g.vertex_count())
                .filter(|&v| mask >> v & 1 == 1)
                .fold(mask, |acc, v| g.adjacency(v).iter().fold(acc, |a, &(w, _)| a | 1 << w))
        };
        let m = g.edge_count();
        for code in 0..VALUES.len().pow(m as u32) {
            let w: Vec<(i64, i64)> = (0..m).map(|e| VALUES[code / VALUES.len().pow(e as u32) % VALUES.len()]).collect();
            let valid = valid_selections(g, &w, &cycles, &closed);
            let (x, ledger) = run_rounding(g, &w).map_err(|e| format!("graph {gi}, weights {w:?}: {e}"))?;
            let bits: u64 = x.iter().enumerate().map(|(e, &b)| (b as u64) << e).sum();
            ensure(valid >> bits & 1 == 1, || {
                format!("graph {gi} {:?}, weights {w:?}: selection {x:?} is not in the valid set", g.edges())
            })?;
            rounding_holds(g, &w, &x, &ledger).map_err(|e| format!("graph {gi}, weights {w:?}: {e}"))?;
            runs += 1;
        }
    }
    Ok(format!("{} graphs, {runs} weight maps", graphs.len()))
}

// ---------------------------------------------------------------------------
// 3-6. Schemes
// ---------------------------------------------------------------------------

fn bipartite_scheme() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut exact = 0;
    for k in 2..=6usize {
        for trial in 0..50 {
            let delta = k * (k - 1) + rng.gen_range(0..=2);
            let n = 2 * (delta + rng.gen_range(1..=8));
            let g = random_min_degree_graph(n, delta, true, rng.gen()).map_err(|e| e.to_string())?;
            let tag = |e: String| format!("k={k} trial {trial}: {e}");
            ensure(g.min_degree() >= k * (k - 1) && two_colourable(&g), || tag("generator broke its contract".into()))?;
            let (c, _) = colour_bipartite(&g, k).map_err(|e| tag(e.to_string()))?;
            majority_holds(&g, c.colours(), k).map_err(tag)?;
            for v in (0..g.vertex_count()).filter(|&v| g.degree(v) % (k + 1) == 0) {
                let share = g.degree(v) / (k + 1);
                for colour in 1..=k as u32 + 1 {
                    let got = colour_degree(&g, c.colours(), v, |x| x == colour);
                    ensure(got == share, || tag(format!("vertex {v} has {got} of colour {colour}, expected {share}")))?;
                }
                exact += 1;
            }
        }
    }
    ensure(exact > 0, || "no vertex had degree divisible by k+1".into())?;
    Ok(format!("250 graphs, {exact} vertices with exact equal shares"))
}

fn general_scheme() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut largest = 0;
    for k in 2..=5usize {
        for trial in 0..25 {
            let target = 2 * k * k + rng.gen_range(0..=2);
            let n = target + 1 + rng.gen_range(0..=target);
            let g = random_min_degree_graph(n, target, false, rng.gen()).map_err(|e| e.to_string())?;
            let tag = |e: String| format!("k={k} trial {trial}: {e}");
            let (c, _) = colour_general_2k2(&g, k).map_err(|e| tag(e.to_string()))?;
            majority_holds(&g, c.colours(), k).map_err(tag)?;
            let delta = g.min_degree() as i64;
            let kk = k as i64;
            for v in 0..g.vertex_count() {
                let d = g.degree(v) as i64;
                for i in 1..=k as u32 {
                    let class = colour_degree(&g, c.colours(), v, |x| x == i) as i64;
                    let residual = colour_degree(&g, c.colours(), v, |x| x > i) as i64;
                    // class <= d/k and residual <= (d/δ)(δ - i(δ/k - 2)), cleared of fractions
                    ensure(class * kk <= d, || tag(format!("vertex {v}: class {i} has {class} of {d}")))?;
                    let i = i as i64;
                    ensure(residual * delta * kk <= d * (delta * kk - i * (delta - 2 * kk)), || {
                        tag(format!("vertex {v}: {residual} edges left after round {i} at degree {d}"))
                    })?;
                }
            }
            largest = largest.max(g.vertex_count());
        }
    }
    Ok(format!("100 graphs, up to {largest} vertices"))
}

fn refined_scheme() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut settled = 0;
    for (k, threshold) in [(5usize, 45usize), (6, 66)] {
        let (n, m) = binary_split(k);
        ensure(1 << n == k + 1 - m && m < 1 << n, || format!("k={k}: bad split n={n}, m={m}"))?;
        ensure(2 * threshold >= 3 * k * k + k * m + k, || format!("k={k}: threshold {threshold} too low"))?;
        for trial in 0..10 {
            let target = threshold + rng.gen_range(0..=3);
            let size = target + 1 + rng.gen_range(0..=target / 2);
            let g = random_min_degree_graph(size, target, false, rng.gen()).map_err(|e| e.to_string())?;
            let tag = |e: String| format!("k={k} trial {trial}: {e}");
            let (c, report) = colour_refined(&g, k).map_err(|e| tag(e.to_string()))?;
            majority_holds(&g, c.colours(), k).map_err(tag)?;
            let summary = report.refined.as_ref().ok_or_else(|| tag("no refined summary".into()))?;
            ensure(summary.largest_settled_component <= n as usize, || {
                tag(format!("settled component of {} vertices", summary.largest_settled_component))
            })?;

            // replay the binary stage on the edges that got binary colours
            let binary: Vec<usize> = (0..g.edge_count()).filter(|&e| c.colour(e) as usize > m).collect();
            let (h, parent) = g.edge_subgraph(&binary);
            let (bits, fixed, _) = refined_split(&h, n).map_err(|e| tag(e.to_string()))?;
            for (e, &p) in parent.iter().enumerate() {
                ensure(c.colour(p) as u64 == m as u64 + 1 + bits[e], || tag(format!("edge {p} disagrees with its replay")))?;
            }
            for v in 0..h.vertex_count() {
                let dh = h.degree(v) as u64;
                let mut per: HashMap<u64, (u64, bool)> = HashMap::new();
                for &(_, e) in h.adjacency(v) {
                    let slot = per.entry(bits[e]).or_default();
                    slot.0 += 1;
                    slot.1 |= fixed[e];
                }
                for (alpha, (count, any_fixed)) in per {
                    if any_fixed {
                        ensure(count < n as u64, || tag(format!("vertex {v}: {count} settled edges of colour {alpha}")))?;
                        settled += 1;
                    } else {
                        // count <= (d_H - 1)/2^n + 3/2
                        ensure(count << (n + 1) <= 2 * (dh - 1) + (3 << n), || {
                            tag(format!("vertex {v}: {count} edges of colour {alpha} at H-degree {dh}"))
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("20 graphs, {settled} vertex-colour pairs touched by settled edges"))
}

fn small_k_threshold() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut passes = 0;
    for k in 2..=4usize {
        let delta = k * k;
        let mut made = 0;
        let mut attempt = 0;
        while made < 50 {
            attempt += 1;
            ensure(attempt <= 500, || format!("k={k}: cannot generate graphs of minimum degree exactly {delta}"))?;
            let n = delta + 2 + rng.gen_range(0..=2 * delta);
            let g = random_min_degree_graph(n, delta, false, rng.gen()).map_err(|e| e.to_string())?;
            if g.min_degree() != delta {
                continue;
            }
            let tag = |e: String| format!("k={k} graph {made}: {e}");
            let (c, report) = colour_small_k(&g, k).map_err(|e| tag(e.to_string()))?;
            majority_holds(&g, c.colours(), k).map_err(tag)?;
            for history in &report.eliminations {
                ensure(history.windows(2).all(|w| w[0] > w[1]) && history.last() == Some(&0), || {
                    tag(format!("elimination counts {history:?}"))
                })?;
                passes += history.len() - 1;
            }
            made += 1;
        }
    }
    Ok(format!("150 graphs, {passes} elimination passes"))
}

// ---------------------------------------------------------------------------
// 7. Lower bounds
// ---------------------------------------------------------------------------

fn lower_bounds() -> Outcome {
    let g = general_lower_bound(2).map_err(|e| e.to_string())?;
    ensure(g.vertex_count() == 6 && g.edge_count() == 10, || "general lower bound for k=2 is not 6 vertices, 10 edges".into())?;

    // second route: try all 3^10 colourings directly
    let mut colours = vec![1u32; 10];
    let brute_force_found = (0..3u32.pow(10)).any(|code| {
        for (e, c) in colours.iter_mut().enumerate() {
            *c = code / 3u32.pow(e as u32) % 3 + 1;
        }
        majority_holds(&g, &colours, 2).is_ok()
    });
    ensure(!brute_force_found, || "brute force found a colouring of the general lower bound".into())?;

    let start = Instant::now();
    let outcome = exhaustive_search(&g, 2, 3, DEFAULT_NODE_LIMIT).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let nodes = match outcome {
        SearchOutcome::Exhausted { node_count, limit_hit: false } => node_count,
        other => return Err(format!("search on the general lower bound returned {other:?}")),
    };
    ensure(nodes < 3u64.pow(10), || format!("{nodes} nodes"))?;
    ensure(took < secs(1), || format!("search took {took:?}"))?;

    for k in 2..=6usize {
        ensure((k + 1) * (k - 2) < k * k - k - 1, || format!("k={k}: counting inequality fails"))?;
        let g = bipartite_lower_bound(k).map_err(|e| e.to_string())?;
        let blocked = (0..g.vertex_count()).any(|v| (k + 1) * (g.degree(v) / k) < g.degree(v));
        ensure(blocked, || format!("k={k}: no vertex is over-full by counting"))?;
        ensure(pigeonhole_blocked(&g, k, k as u32 + 1).is_some(), || format!("k={k}: pre-filter passed"))?;
        match exhaustive_search(&g, k, k as u32 + 1, DEFAULT_NODE_LIMIT).map_err(|e| e.to_string())? {
            SearchOutcome::Exhausted { node_count: 0, limit_hit: false } => {}
            other => return Err(format!("k={k}: bipartite lower bound gave {other:?}")),
        }
    }
    Ok(format!("general k=2 exhausted in {nodes} nodes ({:.1} ms); bipartite k=2..6 cut by counting", took.as_secs_f64() * 1e3))
}

// ---------------------------------------------------------------------------
// 8. Reductions
// ---------------------------------------------------------------------------

fn with_hubs(rng: &mut ChaCha8Rng, k: usize) -> Graph {
    let kk = k * k;
    let n = 2 * kk + k + 2 + rng.gen_range(0..=12);
    let base = random_min_degree_graph(n, kk + rng.gen_range(0..k), false, rng.gen()).unwrap();
    let mut pairs: Vec<(usize, usize)> = base.edges().to_vec();
    let mut present: HashSet<(usize, usize)> = pairs.iter().copied().collect();
    for _ in 0..rng.gen_range(0..=3) {
        let hub = rng.gen_range(0..n);
        let target = rng.gen_range(2 * kk..n);
        let mut others: Vec<usize> = (0..n).filter(|&v| v != hub).collect();
        others.shuffle(rng);
        let mut degree = pairs.iter().filter(|&&(a, b)| a == hub || b == hub).count();
        for v in others {
            if degree >= target {
                break;
            }
            let e = (hub.min(v), hub.max(v));
            if present.insert(e) {
                pairs.push(e);
                degree += 1;
            }
        }
    }
    Graph::new(n, &pairs).unwrap()
}

fn reduction_round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let (mut split_vertices, mut lifted) = (0, 0);
    for trial in 0..200 {
        let k = rng.gen_range(2..=4usize);
        let g = with_hubs(&mut rng, k);
        let tag = |e: String| format!("trial {trial} (k={k}): {e}");
        let (r, trace) = reduce_to_sk(&g, k).map_err(|e| tag(e.to_string()))?;
        for v in 0..r.vertex_count() {
            let d = r.degree(v);
            ensure(k * k <= d && d < 2 * k * k && d % k == k - 1, || tag(format!("reduced vertex {v} has degree {d}")))?;
        }
        let mut caps = vec![0; g.vertex_count()];
        for (part, &v) in trace.split.origin.iter().enumerate() {
            caps[v] += r.degree(part) / k;
        }
        for (v, &cap) in caps.iter().enumerate() {
            ensure(cap == g.degree(v) / k, || tag(format!("vertex {v}: caps {cap} against {}", g.degree(v) / k)))?;
        }
        split_vertices += trace.split.origin.len() - g.vertex_count();
        lifted += usize::from(trace.lift.doublings > 0);

        let (c, _) = colour_small_k(&r, k).map_err(|e| tag(e.to_string()))?;
        let mut colours = c.colours().to_vec();
        for _ in 0..r.edge_count() {
            let e = rng.gen_range(0..r.edge_count());
            let old = colours[e];
            colours[e] = rng.gen_range(1..=k as u32 + 1);
            let (u, v) = r.edge(e);
            let fits = |x: usize| colour_degree(&r, &colours, x, |c| c == colours[e]) * k <= r.degree(x);
            if !(fits(u) && fits(v)) {
                colours[e] = old;
            }
        }
        majority_holds(&r, &colours, k).map_err(tag)?;
        let shuffled = EdgeColouring::new(colours, k as u32 + 1).map_err(|e| tag(e.to_string()))?;
        for reduced in [&c, &shuffled] {
            let back = pull_back_colouring(reduced, &trace).map_err(|e| tag(e.to_string()))?;
            majority_holds(&g, back.colours(), k).map_err(|e| tag(format!("pull-back: {e}")))?;
        }
    }
    Ok(format!("200 graphs, {split_vertices} split-off vertices, {lifted} lifted"))
}

// ---------------------------------------------------------------------------
// 9. Determinism of the command-line tool
// ---------------------------------------------------------------------------

fn majority(dir: &Path, args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_majority"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    ensure(code == 0 || code == 1, || {
        format!("`majority {}` exited {code}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr))
    })?;
    Ok((code, out.stdout))
}

fn without_timing(bytes: &[u8]) -> Result<serde_json::Value, String> {
    let mut value: serde_json::Value = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    value.as_object_mut().ok_or("report is not an object")?.remove("duration_ms");
    Ok(value)
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for round in ["a", "b"] {
        let dir = tmp.path().join(round);
        fs::create_dir(&dir).map_err(|e| e.to_string())?;
        let dir = dir.as_path();
        for (name, extra) in [
            ("sparse", vec!["--n", "30", "--delta", "9"]),
            ("general", vec!["--n", "40", "--delta", "8"]),
            ("dense", vec!["--n", "50", "--delta", "15"]),
            ("bip", vec!["--n", "24", "--delta", "3", "--bipartite"]),
        ] {
            let mut args = vec!["construct", "--family", "random", "--seed", "11", "--output", name];
            args.extend(extra);
            majority(dir, &args)?;
        }
        majority(dir, &["construct", "--family", "general-lower", "--k", "2", "--output", "gl2"])?;
        majority(dir, &["construct", "--family", "bipartite-lower", "--k", "3", "--output", "bl3"])?;
        for (graph, k, algorithm) in [
            ("sparse", "3", "auto"),
            ("general", "2", "general"),
            ("dense", "3", "refined"),
            ("bip", "2", "bipartite"),
            ("sparse", "2", "small-k"),
        ] {
            let out = format!("{graph}-{algorithm}.col");
            let report = format!("{graph}-{algorithm}.json");
            majority(dir, &["colour", "--k", k, "--input", graph, "--output", &out, "--algorithm", algorithm, "--report", &report])?;
            let (_, verdict) = majority(dir, &["verify", "--k", k, "--graph", graph, "--colouring", &out, "--json"])?;
            fs::write(dir.join(format!("{graph}-{algorithm}.verify")), verdict).map_err(|e| e.to_string())?;
        }
        let (_, oracle) = majority(dir, &["oracle", "--k", "2", "--graph", "gl2", "--json"])?;
        fs::write(dir.join("gl2.oracle"), oracle).map_err(|e| e.to_string())?;
        for (name, extra) in [("k2.csv", vec!["--k", "2", "--delta", "4"]), ("k3.csv", vec!["--k", "3", "--delta", "5"])] {
            let mut args = vec!["sweep", "--n", "14", "--trials", "12", "--seed", "7", "--output", name];
            args.extend(extra);
            majority(dir, &args)?;
        }
    }
    let mut names: Vec<_> = fs::read_dir(tmp.path().join("a"))
        .map_err(|e| e.to_string())?
        .map(|entry| entry.map(|e| e.file_name()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    names.sort();
    for name in names {
        let a = fs::read(tmp.path().join("a").join(&name)).map_err(|e| e.to_string())?;
        let b = fs::read(tmp.path().join("b").join(&name)).map_err(|e| e.to_string())?;
        let name = name.to_string_lossy().into_owned();
        if name.ends_with(".json") || name.ends_with(".verify") || name.ends_with(".oracle") {
            ensure(without_timing(&a)? == without_timing(&b)?, || format!("{name} differs between runs"))?;
            let report = without_timing(&a)?;
            if report["algorithm"] != "oracle" {
                ensure(report["verdict"]["pass"] == true, || format!("{name} does not carry a passing verdict"))?;
            }
        } else {
            ensure(a == b, || format!("{name} differs between runs"))?;
        }
        compared += 1;
    }
    Ok(format!("{compared} output files identical across two runs"))
}
