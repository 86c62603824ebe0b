use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ratio, Exceptional, Rational, WeightAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A support cycle, entered at its smallest vertex along the lower-indexed of
/// that vertex's two cycle edges.
struct SupportCycle {
    vertices: Vec<usize>,
    edges: Vec<usize>,
    bad: bool,
}

/// Rounds the fractional edges left after saturation, which must form
/// vertex-disjoint odd cycles with exact vertex sums.
///
/// Cycles carrying 1/2 on every edge ("bad" cycles) that are joined by a graph
/// edge are first cleared pairwise: the joining edge flips and the cycle
/// edges shift by alternating halves, keeping every vertex sum. Every cycle
/// left is rounded to nearest, splitting ties so that each vertex between two
/// halves gets one up and one down; on a bad cycle its smallest vertex gets
/// both halves rounded up and is recorded as exceptional.
pub fn resolve_cycles(g: &Graph, x: &mut [Rational]) -> Result<Vec<Exceptional>> {
    let half = ratio(1, 2);
    let mut cycles = support_cycles(g, x, &half)?;
    let mut cycle_of: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for (i, c) in cycles.iter().enumerate() {
        for &v in &c.vertices {
            cycle_of[v] = Some(i);
        }
    }

    // clear adjacent bad pairs, scanning joining edges by index
    let mut cleared = vec![false; cycles.len()];
    for (e0, &(u, v)) in g.edges().iter().enumerate() {
        let (Some(a), Some(b)) = (cycle_of[u], cycle_of[v]) else {
            continue;
        };
        if a == b || !cycles[a].bad || !cycles[b].bad || cleared[a] || cleared[b] {
            continue;
        }
        let raise = x[e0].is_zero();
        x[e0] = if raise { Rational::one() } else { Rational::zero() };
        for (c, end) in [(a, u), (b, v)] {
            let cycle = &cycles[c];
            let start = cycle.vertices.iter().position(|&w| w == end).unwrap();
            let l = cycle.edges.len();
            for j in 0..l {
                let e = cycle.edges[(start + j) % l];
                // coefficient -1 at even offsets, +1 at odd; shift by +-1/2 of it
                let up = (j % 2 == 1) == raise;
                x[e] = if up { Rational::one() } else { Rational::zero() };
            }
        }
        cleared[a] = true;
        cleared[b] = true;
    }

    let mut exceptional = Vec::new();
    for (i, cycle) in cycles.iter_mut().enumerate() {
        if cleared[i] {
            continue;
        }
        if cycle.bad {
            for (j, &e) in cycle.edges.iter().enumerate() {
                x[e] = if j % 2 == 0 { Rational::one() } else { Rational::zero() };
            }
            exceptional.push(Exceptional {
                vertex: cycle.vertices[0],
                cycle: std::mem::take(&mut cycle.edges),
            });
        } else {
            round_mixed_cycle(x, &cycle.edges, &half);
        }
    }
    Ok(exceptional)
}

/// Nearest-integer rounding on a cycle that is not all halves. Inside each
/// maximal run of halves the lowest-indexed edge rounds up and the run
/// alternates from there.
fn round_mixed_cycle(x: &mut [Rational], edges: &[usize], half: &Rational) {
    let l = edges.len();
    let is_half: Vec<bool> = edges.iter().map(|&e| x[e] == *half).collect();
    let anchor = is_half.iter().position(|h| !h).expect("cycle is not all halves");
    let mut run: Vec<usize> = Vec::new();
    let flush = |run: &mut Vec<usize>, x: &mut [Rational]| {
        if let Some(lowest) = (0..run.len()).min_by_key(|&i| run[i]) {
            for (i, &e) in run.iter().enumerate() {
                let up = i.abs_diff(lowest) % 2 == 0;
                x[e] = if up { Rational::one() } else { Rational::zero() };
            }
        }
        run.clear();
    };
    for j in 1..=l {
        let pos = (anchor + j) % l;
        let e = edges[pos];
        if is_half[pos] {
            run.push(e);
        } else {
            flush(&mut run, x);
            x[e] = if x[e] > *half { Rational::one() } else { Rational::zero() };
        }
    }
    flush(&mut run, x);
}

fn support_cycles(g: &Graph, x: &[Rational], half: &Rational) -> Result<Vec<SupportCycle>> {
    let n = g.vertex_count();
    let active: Vec<bool> = x.iter().map(|v| !v.is_integer()).collect();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if active[e] {
            at[u].push(e);
            at[v].push(e);
        }
    }
    if let Some(v) = (0..n).find(|&v| !at[v].is_empty() && at[v].len() != 2) {
        return Err(Error::invariant(format!(
            "fractional edges do not form disjoint cycles at vertex {v}"
        )));
    }
    let mut done = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if done[start] || at[start].is_empty() {
            continue;
        }
        let mut vertices = vec![start];
        let mut edges = vec![at[start][0].min(at[start][1])];
        done[start] = true;
        let mut v = g.opposite(edges[0], start);
        while v != start {
            done[v] = true;
            vertices.push(v);
            let last = *edges.last().unwrap();
            let e = if at[v][0] == last { at[v][1] } else { at[v][0] };
            edges.push(e);
            v = g.opposite(e, v);
        }
        if edges.len() % 2 == 0 {
            return Err(Error::invariant(format!("even fractional cycle through {start}")));
        }
        let bad = edges.iter().all(|&e| x[e] == *half);
        cycles.push(SupportCycle { vertices, edges, bad });
    }
    Ok(cycles)
}

/// Selects every unselected edge whose two endpoints both sit strictly below
/// their weight sums, scanning edges by index. Selection only lowers the
/// deficient set, so one pass leaves no such edge. Returns the flipped edges.
pub fn enforce_condition_ii(g: &Graph, z: &WeightAssignment, x: &mut [bool]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut zs = vec![Rational::zero(); n];
    let mut xs = vec![0usize; n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        zs[u] += &z.weights()[e];
        zs[v] += &z.weights()[e];
        if x[e] {
            xs[u] += 1;
            xs[v] += 1;
        }
    }
    let below = |s: usize, w: &Rational| Rational::from_integer(BigInt::from(s)) < *w;
    let mut flipped = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !x[e] && below(xs[u], &zs[u]) && below(xs[v], &zs[v]) {
            x[e] = true;
            xs[u] += 1;
            xs[v] += 1;
            flipped.push(e);
        }
    }
    flipped
}
