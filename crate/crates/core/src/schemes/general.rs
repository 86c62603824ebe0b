use num_bigint::BigInt;

use super::{require_min_degree, round_into, unit, verified, Algorithm, SchemeReport};
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rounding::Rational;

/// Weight of round `i` (1-based) for minimum degree `delta`:
/// `(delta/k - 1) / (delta - (i-1)(delta/k - 2))`.
pub fn general_weight(delta: usize, k: usize, i: usize) -> Rational {
    let int = |v: i64| Rational::from_integer(BigInt::from(v));
    let per_colour = int(delta as i64) / int(k as i64);
    let two = int(2);
    let numerator = &per_colour - unit();
    let denominator = int(delta as i64) - int(i as i64 - 1) * (&per_colour - &two);
    numerator / denominator
}

/// Colours classes `1..=rounds` by rounding at the general weights and checks
/// the per-round degree bounds at every vertex: with `d(v) = b·delta`, class
/// `i` has at most `b·delta/k` edges at `v` and at most
/// `b·(delta - i(delta/k - 2))` edges stay uncoloured.
pub(super) fn weighted_rounds(
    g: &Graph,
    k: usize,
    rounds: usize,
    colours: &mut [u32],
    report: &mut SchemeReport,
) -> Result<()> {
    let delta = g.min_degree() as i128;
    let kk = k as i128;
    for i in 1..=rounds {
        let z = general_weight(g.min_degree(), k, i);
        round_into(g, colours, &z, i as u32, report)?;
        let mut class = vec![0i128; g.vertex_count()];
        let mut residual = vec![0i128; g.vertex_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let target = match colours[e] {
                0 => &mut residual,
                c if c == i as u32 => &mut class,
                _ => continue,
            };
            target[u] += 1;
            target[v] += 1;
        }
        let step = delta * kk - i as i128 * (delta - 2 * kk);
        for v in 0..g.vertex_count() {
            let d = g.degree(v) as i128;
            if class[v] * kk > d {
                return Err(Error::invariant(format!(
                    "round {i}: vertex {v} has {} edges of colour {i}, degree {d}",
                    class[v]
                )));
            }
            if residual[v] * delta * kk > d * step {
                return Err(Error::invariant(format!(
                    "round {i}: vertex {v} keeps {} uncoloured edges, degree {d}",
                    residual[v]
                )));
            }
        }
    }
    Ok(())
}

/// Colours a graph of minimum degree at least `2k²`: rounds `1..=k` at the
/// general weights for the true minimum degree, then colour `k+1` takes the
/// rest.
pub fn colour_general_2k2(g: &Graph, k: usize) -> Result<(EdgeColouring, SchemeReport)> {
    require_min_degree(g, Algorithm::General, k)?;
    let mut report = SchemeReport::new(Algorithm::General, g, k);
    let mut colours = vec![0u32; g.edge_count()];
    weighted_rounds(g, k, k, &mut colours, &mut report)?;
    let last = k as u32 + 1;
    for c in colours.iter_mut().filter(|c| **c == 0) {
        *c = last;
    }
    let c = verified(g, colours, k, &mut report)?;
    Ok((c, report))
}
