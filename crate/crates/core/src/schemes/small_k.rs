use super::{require_min_degree, round_into, verified, Algorithm, SchemeReport};
use super::eliminate::{eliminate_bad_components, MonoComponent};
use crate::colouring::{check_majority, EdgeColouring};
use crate::error::{Error, Result};
use crate::euler_split::{balanced_bicolouring, AnyVertex, BadVertexSelector, Bicolouring, NoVertex, Side};
use crate::graph::{components, Graph};
use crate::reductions::{pull_back_colouring, reduce_to_sk};
use crate::rounding::ratio;

/// Colours a graph of minimum degree at least `k²` for `k` in 2..=4.
///
/// The graph is first reduced so that every degree lies in `S_k`, coloured
/// there by rounding and balanced splits, and the colouring is restricted
/// back to the input.
pub fn colour_small_k(g: &Graph, k: usize) -> Result<(EdgeColouring, SchemeReport)> {
    if !(2..=4).contains(&k) {
        return Err(Error::input(format!("small-k scheme covers k = 2, 3, 4, got {k}")));
    }
    require_min_degree(g, Algorithm::SmallK, k)?;
    let mut report = SchemeReport::new(Algorithm::SmallK, g, k);
    let (reduced, trace) = reduce_to_sk(g, k)?;
    if reduced.vertex_count() != g.vertex_count() {
        report.reduced_vertices = Some(reduced.vertex_count());
    }
    let colours = match k {
        2 => colour_two(&reduced, &mut report)?,
        3 => colour_three(&reduced, &mut report)?,
        _ => colour_four(&reduced, &mut report)?,
    };
    let on_reduced = EdgeColouring::new(colours, k as u32 + 1)
        .map_err(|e| Error::invariant(format!("incomplete colouring: {e}")))?;
    let verdict = check_majority(&reduced, &on_reduced, k)?;
    if let Some(w) = verdict.witness {
        return Err(Error::invariant(format!(
            "reduced graph: {} edges of colour {} at vertex {} (cap {})",
            w.count, w.colour, w.vertex, w.cap
        )));
    }
    let back = pull_back_colouring(&on_reduced, &trace)?;
    let c = verified(g, back.colours().to_vec(), k, &mut report)?;
    Ok((c, report))
}

/// Splits the edges `edges` of `g` and writes `blue`/`red` into `colours`.
fn split_into(
    g: &Graph,
    edges: &[usize],
    selector: &impl BadVertexSelector,
    colours: &mut [u32],
    (blue, red): (u32, u32),
) -> Result<()> {
    let (sub, to_parent) = g.edge_subgraph(edges);
    let split = balanced_bicolouring(&sub, selector)?;
    for (e, &parent) in to_parent.iter().enumerate() {
        colours[parent] = if split.side[e] == Side::Blue { blue } else { red };
    }
    Ok(())
}

/// Splits each colour class of `split` again: blue into `pairs.0`, red into
/// `pairs.1`. `allowed(class, v)` decides whether `v` may be bad in `class`.
fn split_classes(
    h: &Graph,
    to_parent: &[usize],
    split: &Bicolouring,
    allowed: impl Fn(&Graph, usize) -> bool,
    colours: &mut [u32],
    pairs: [(u32, u32); 2],
) -> Result<()> {
    for (side, pair) in [Side::Blue, Side::Red].into_iter().zip(pairs) {
        let class_edges: Vec<usize> = split.class(side);
        let (class, class_parent) = h.edge_subgraph(&class_edges);
        let selector = |v: usize| allowed(&class, v).then_some(0);
        let inner = balanced_bicolouring(&class, &selector)?;
        for (e, &in_h) in class_parent.iter().enumerate() {
            colours[to_parent[in_h]] = if inner.side[e] == Side::Blue { pair.0 } else { pair.1 };
        }
    }
    Ok(())
}

/// Degrees in {5, 7}: one rounding round at 1/3, then a split of the rest,
/// which never needs a bad vertex.
fn colour_two(g: &Graph, report: &mut SchemeReport) -> Result<Vec<u32>> {
    let mut colours = vec![0u32; g.edge_count()];
    round_into(g, &mut colours, &ratio(1, 3), 3, report)?;
    let open: Vec<usize> = (0..colours.len()).filter(|&e| colours[e] == 0).collect();
    split_into(g, &open, &NoVertex, &mut colours, (1, 2))?;
    Ok(colours)
}

/// Degrees in {11, 14, 17}.
fn colour_three(g: &Graph, report: &mut SchemeReport) -> Result<Vec<u32>> {
    let mut colours = vec![0u32; g.edge_count()];
    let mut aside = Vec::new();
    let mut main = Vec::new();
    for block in components(g) {
        let mut edges: Vec<usize> = block
            .iter()
            .flat_map(|&v| g.adjacency(v).iter().map(|&(_, e)| e))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let regular_14 = block.iter().all(|&v| g.degree(v) == 14);
        if regular_14 && edges.len() % 2 == 1 {
            aside.extend(edges);
        } else {
            main.extend(edges);
        }
    }
    main.sort_unstable();
    aside.sort_unstable();

    let (h, to_parent) = g.edge_subgraph(&main);
    let mut split = balanced_bicolouring(&h, &NoVertex)?;
    let history = eliminate_bad_components(
        &h,
        &mut split,
        |c: &MonoComponent| c.edges.len() % 2 == 1 && c.degrees.iter().all(|&d| d == 6),
        |c: &MonoComponent| c.vertices[0],
    )?;
    report.eliminations.push(history);
    split_classes(
        &h,
        &to_parent,
        &split,
        |class, v| class.degree(v) == 8,
        &mut colours,
        [(1, 2), (3, 4)],
    )?;

    if !aside.is_empty() {
        let (h, to_parent) = g.edge_subgraph(&aside);
        let split = balanced_bicolouring(&h, &AnyVertex)?;
        split_classes(&h, &to_parent, &split, |_, _| false, &mut colours, [(1, 2), (3, 4)])?;
    }
    Ok(colours)
}

/// Degrees in {19, 23, 27, 31}.
fn colour_four(g: &Graph, report: &mut SchemeReport) -> Result<Vec<u32>> {
    let mut colours = vec![0u32; g.edge_count()];
    round_into(g, &mut colours, &ratio(1, 5), 1, report)?;
    let open: Vec<usize> = (0..colours.len()).filter(|&e| colours[e] == 0).collect();
    let (h, to_parent) = g.edge_subgraph(&open);
    let h_selector = |v: usize| matches!(h.degree(v), 18 | 22).then_some(0);
    let mut split = balanced_bicolouring(&h, &h_selector)?;
    let history = eliminate_bad_components(
        &h,
        &mut split,
        |c: &MonoComponent| {
            c.edges.len() % 2 == 1
                && c.vertices.iter().zip(&c.degrees).all(|(&v, &d)| {
                    (d == 10 && g.degree(v) == 23) || (d == 8 && g.degree(v) == 19)
                })
        },
        |c: &MonoComponent| {
            c.vertices
                .iter()
                .zip(&c.degrees)
                .filter(|&(_, &d)| d == 10)
                .map(|(&v, _)| (h.degree(v) % 2 == 0, v))
                .min()
                .map_or(c.vertices[0], |(_, v)| v)
        },
    )?;
    report.eliminations.push(history);
    split_classes(
        &h,
        &to_parent,
        &split,
        |class, v| {
            let d = class.degree(v);
            (d == 10 && g.degree(v) == 27) || (d == 12 && g.degree(v) == 31)
        },
        &mut colours,
        [(2, 3), (4, 5)],
    )?;
    Ok(colours)
}
