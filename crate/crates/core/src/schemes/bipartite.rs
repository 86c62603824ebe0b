use super::{require_min_degree, round_into, verified, Algorithm, SchemeReport};
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::{is_bipartite, Graph};
use crate::rounding::ratio;

/// Colours a bipartite graph of minimum degree at least `k(k-1)`.
///
/// For `i = k+1, ..., 2` the uncoloured edges are rounded at constant weight
/// `1/i` and the selected edges take colour `i`; colour 1 is what remains.
/// Without odd cycles the rounding has no exceptional vertices, so each round
/// takes between `d/i - 1` and `d/i` of the `d` edges still open at a vertex
/// (rounded to integers).
pub fn colour_bipartite(g: &Graph, k: usize) -> Result<(EdgeColouring, SchemeReport)> {
    require_min_degree(g, Algorithm::Bipartite, k)?;
    if !is_bipartite(g).is_bipartite() {
        return Err(Error::precondition("graph is not bipartite"));
    }
    let mut report = SchemeReport::new(Algorithm::Bipartite, g, k);
    let mut colours = vec![0u32; g.edge_count()];
    for i in (2..=k + 1).rev() {
        round_into(g, &mut colours, &ratio(1, i as i64), i as u32, &mut report)?;
    }
    for c in colours.iter_mut().filter(|c| **c == 0) {
        *c = 1;
    }
    let c = verified(g, colours, k, &mut report)?;
    Ok((c, report))
}
