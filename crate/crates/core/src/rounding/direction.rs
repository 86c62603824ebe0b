//! Search for edge-coefficient vectors whose vertex sums vanish.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{Rational, SupportView};
use crate::error::{Error, Result};
use crate::graph::{tree_cycle, Graph};

/// Coefficients on support edges, sorted by edge index, all nonzero.
///
/// A kernel direction has zero sum at every vertex. Pendant directions built by
/// [`pendant_direction`] share the type but may have nonzero sums at leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDirection {
    coefficients: Vec<(usize, Rational)>,
}

impl KernelDirection {
    fn from_map(map: BTreeMap<usize, Rational>) -> Self {
        KernelDirection {
            coefficients: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn coefficients(&self) -> &[(usize, Rational)] {
        &self.coefficients
    }

    pub fn coefficient(&self, e: usize) -> Option<&Rational> {
        self.coefficients
            .binary_search_by_key(&e, |(f, _)| *f)
            .ok()
            .map(|i| &self.coefficients[i].1)
    }

    /// Sum of coefficients over the edges at `v`.
    pub fn vertex_sum(&self, g: &Graph, v: usize) -> Rational {
        g.adjacency(v)
            .iter()
            .filter_map(|&(_, e)| self.coefficient(e))
            .fold(Rational::zero(), |acc, c| acc + c)
    }
}

/// Reusable BFS state with generation stamps, so repeated searches on the
/// same vertex set avoid clearing arrays.
pub(crate) struct Bfs {
    stamp: Vec<u32>,
    generation: u32,
    pub(crate) parent: Vec<Option<(usize, usize)>>,
    pub(crate) depth: Vec<usize>,
    /// Vertices in discovery order; doubles as the queue.
    pub(crate) order: Vec<usize>,
}

impl Bfs {
    pub(crate) fn new(n: usize) -> Self {
        Bfs {
            stamp: vec![0; n],
            generation: 0,
            parent: vec![None; n],
            depth: vec![0; n],
            order: Vec::new(),
        }
    }

    fn start(&mut self, root: usize) {
        self.generation += 1;
        self.order.clear();
        self.visit(root, None, 0);
    }

    fn seen(&self, v: usize) -> bool {
        self.stamp[v] == self.generation
    }

    fn visit(&mut self, v: usize, parent: Option<(usize, usize)>, depth: usize) {
        self.stamp[v] = self.generation;
        self.parent[v] = parent;
        self.depth[v] = depth;
        self.order.push(v);
    }

    /// Tree path from `a` to `b` as (vertices, edges).
    fn path(&self, a: usize, b: usize) -> (Vec<usize>, Vec<usize>) {
        let (mut x, mut y) = (a, b);
        let (mut from_a, mut from_b) = (vec![a], vec![b]);
        let (mut edges_a, mut edges_b) = (Vec::new(), Vec::new());
        while x != y {
            if self.depth[x] >= self.depth[y] {
                let (p, e) = self.parent[x].expect("tree path leaves the tree");
                edges_a.push(e);
                from_a.push(p);
                x = p;
            } else {
                let (p, e) = self.parent[y].expect("tree path leaves the tree");
                edges_b.push(e);
                from_b.push(p);
                y = p;
            }
        }
        from_b.pop();
        from_a.extend(from_b.into_iter().rev());
        edges_a.extend(edges_b.into_iter().rev());
        (from_a, edges_a)
    }
}

/// A closed walk given by its start vertex and edge sequence.
#[derive(Debug, Clone)]
struct Walk {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Walk {
    fn closed(g: &Graph, start: usize, edges: Vec<usize>) -> Self {
        let mut vertices = Vec::with_capacity(edges.len() + 1);
        let mut v = start;
        vertices.push(v);
        for &e in &edges {
            v = g.opposite(e, v);
            vertices.push(v);
        }
        debug_assert_eq!(vertices.first(), vertices.last());
        Walk { vertices, edges }
    }

    /// The same cycle entered at position `i`.
    fn rotated(&self, i: usize) -> Walk {
        let l = self.edges.len();
        let edges = (0..l).map(|j| self.edges[(i + j) % l]).collect();
        let mut vertices: Vec<usize> = (0..l).map(|j| self.vertices[(i + j) % l]).collect();
        vertices.push(vertices[0]);
        Walk { vertices, edges }
    }
}

/// Alternating +1/-1 along an even closed walk; edges traversed twice accumulate.
fn alternating(edges: &[usize]) -> KernelDirection {
    let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
        *map.entry(e).or_insert_with(Rational::zero) += sign;
    }
    KernelDirection::from_map(map)
}

/// Looks for a kernel direction inside the support component of `root`.
///
/// Returns `None` exactly when that component is a tree or contains a single
/// cycle of odd length.
pub fn find_kernel_direction(view: &SupportView<'_>, root: usize) -> Option<KernelDirection> {
    let mut bfs = Bfs::new(view.graph.vertex_count());
    search_kernel(view, root, &mut bfs)
}

/// BFS from `root` that stops at the first even fundamental cycle or the
/// second odd one. On `None`, `bfs.order` holds the whole component.
pub(crate) fn search_kernel(
    view: &SupportView<'_>,
    root: usize,
    bfs: &mut Bfs,
) -> Option<KernelDirection> {
    let g = view.graph;
    bfs.start(root);
    let mut odd: Vec<(usize, usize, usize)> = Vec::new();
    let mut head = 0;
    while head < bfs.order.len() {
        let v = bfs.order[head];
        head += 1;
        let parent_edge = bfs.parent[v].map(|(_, e)| e);
        for &(w, e) in g.adjacency(v) {
            if !view.active[e] || Some(e) == parent_edge {
                continue;
            }
            if !bfs.seen(w) {
                let d = bfs.depth[v] + 1;
                bfs.visit(w, Some((v, e)), d);
                continue;
            }
            if odd.iter().any(|&(_, _, f)| f == e) {
                continue;
            }
            if (bfs.depth[v] + bfs.depth[w]) % 2 == 1 {
                let cycle = tree_cycle(&bfs.parent, &bfs.depth, v, w, e);
                return Some(alternating(&cycle));
            }
            odd.push((v, w, e));
            if odd.len() == 2 {
                let c1 = odd_cycle(g, bfs, odd[0]);
                let c2 = odd_cycle(g, bfs, odd[1]);
                let walk = join_odd_cycles(g, bfs, &c1, &c2);
                let direction = alternating(&walk);
                debug_assert!(!direction.coefficients.is_empty());
                return Some(direction);
            }
        }
    }
    None
}

fn odd_cycle(g: &Graph, bfs: &Bfs, (v, w, e): (usize, usize, usize)) -> Walk {
    Walk::closed(g, v, tree_cycle(&bfs.parent, &bfs.depth, v, w, e))
}

/// Even closed walk built from two distinct odd cycles of the same component.
fn join_odd_cycles(g: &Graph, bfs: &Bfs, c1: &Walk, c2: &Walk) -> Vec<usize> {
    let shared_edges = c1.edges.iter().any(|e| c2.edges.contains(e));
    if shared_edges {
        // theta graph: the symmetric difference is one even cycle
        let diff: Vec<usize> = c1
            .edges
            .iter()
            .chain(&c2.edges)
            .copied()
            .filter(|e| !(c1.edges.contains(e) && c2.edges.contains(e)))
            .collect();
        return order_cycle(g, &diff);
    }
    let body1 = &c1.vertices[..c1.edges.len()];
    let body2 = &c2.vertices[..c2.edges.len()];
    if let Some(i) = body1.iter().position(|v| body2.contains(v)) {
        // figure eight through the shared vertex
        let j = body2.iter().position(|&v| v == body1[i]).unwrap();
        let mut walk = c1.rotated(i).edges;
        walk.extend(c2.rotated(j).edges);
        return walk;
    }
    // dumbbell: cycle, connecting path, cycle, path back
    let (path_v, path_e) = bfs.path(body1[0], body2[0]);
    let last1 = path_v.iter().rposition(|v| body1.contains(v)).unwrap();
    let first2 = last1 + path_v[last1..].iter().position(|v| body2.contains(v)).unwrap();
    let a = path_v[last1];
    let b = path_v[first2];
    let bridge = &path_e[last1..first2];
    let mut walk = c1.rotated(body1.iter().position(|&v| v == a).unwrap()).edges;
    walk.extend_from_slice(bridge);
    walk.extend(c2.rotated(body2.iter().position(|&v| v == b).unwrap()).edges);
    walk.extend(bridge.iter().rev());
    walk
}

/// Orders an edge set forming a single cycle into a closed walk.
fn order_cycle(g: &Graph, edges: &[usize]) -> Vec<usize> {
    let mut remaining: Vec<usize> = edges.to_vec();
    let first = remaining.swap_remove(0);
    let (start, mut v) = g.edge(first);
    let mut walk = vec![first];
    while v != start {
        let i = remaining
            .iter()
            .position(|&e| {
                let (a, b) = g.edge(e);
                a == v || b == v
            })
            .expect("symmetric difference is a cycle");
        let e = remaining.swap_remove(i);
        v = g.opposite(e, v);
        walk.push(e);
    }
    debug_assert!(remaining.is_empty());
    walk
}

/// Direction on a support component that has a leaf and a vertex of degree at
/// least two, with zero sum at every vertex of degree at least two.
///
/// With two or more leaves this is an alternating path between the two
/// smallest leaves. With a single leaf the component is an odd cycle with a
/// hanging path: the path alternates +1/-1 from the leaf and the cycle
/// carries alternating halves so the junction sum cancels.
pub fn pendant_direction(view: &SupportView<'_>, root: usize) -> Result<KernelDirection> {
    let mut bfs = Bfs::new(view.graph.vertex_count());
    pendant_with(view, root, &mut bfs)
}

pub(crate) fn pendant_with(
    view: &SupportView<'_>,
    root: usize,
    bfs: &mut Bfs,
) -> Result<KernelDirection> {
    let g = view.graph;
    let component = support_component(view, root, bfs);
    let degree = |v: usize| view.degree(v);
    let mut leaves: Vec<usize> = component.iter().copied().filter(|&v| degree(v) == 1).collect();
    leaves.sort_unstable();
    if leaves.is_empty() || component.iter().all(|&v| degree(v) < 2) {
        return Err(Error::invariant(format!(
            "pendant direction needs a leaf and an internal vertex in the component of {root}"
        )));
    }
    let mut map = BTreeMap::new();
    if leaves.len() >= 2 {
        support_component(view, leaves[0], bfs);
        let (_, path) = bfs.path(leaves[0], leaves[1]);
        for (i, &e) in path.iter().enumerate() {
            let c = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            map.insert(e, c);
        }
        return Ok(KernelDirection::from_map(map));
    }

    // single leaf: walk the hanging path to the junction
    let leaf = leaves[0];
    let mut prev_edge = usize::MAX;
    let mut v = leaf;
    let mut sign = Rational::one();
    loop {
        let next: Vec<(usize, usize)> = view.edges_at(v).filter(|&(_, e)| e != prev_edge).collect();
        if v != leaf && next.len() >= 2 {
            break;
        }
        let (w, e) = *next.first().ok_or_else(|| {
            Error::invariant(format!("component of {root} is a path, expected a second leaf"))
        })?;
        map.insert(e, sign.clone());
        sign = -sign;
        prev_edge = e;
        v = w;
    }
    let junction = v;
    // around the cycle, starting opposite to the last path coefficient
    let mut half = sign / Rational::from_integer(2.into());
    let mut cycle_edge = view
        .edges_at(junction)
        .find(|&(_, e)| e != prev_edge)
        .map(|(_, e)| e)
        .unwrap();
    let mut u = g.opposite(cycle_edge, junction);
    let mut length = 0usize;
    loop {
        map.insert(cycle_edge, half.clone());
        half = -half;
        length += 1;
        if u == junction {
            break;
        }
        if length > g.edge_count() {
            return Err(Error::invariant("cycle walk did not close"));
        }
        let (w, e) = view
            .edges_at(u)
            .find(|&(_, e)| e != cycle_edge)
            .ok_or_else(|| Error::invariant("cycle walk hit a dead end"))?;
        cycle_edge = e;
        u = w;
    }
    if length.is_multiple_of(2) {
        return Err(Error::invariant(format!(
            "component of {root} carries an even cycle after kernel saturation"
        )));
    }
    Ok(KernelDirection::from_map(map))
}

fn support_component(view: &SupportView<'_>, root: usize, bfs: &mut Bfs) -> Vec<usize> {
    bfs.start(root);
    let mut head = 0;
    while head < bfs.order.len() {
        let v = bfs.order[head];
        head += 1;
        for (w, e) in view.edges_at(v) {
            if !bfs.seen(w) {
                let d = bfs.depth[v] + 1;
                bfs.visit(w, Some((v, e)), d);
            }
        }
    }
    bfs.order.clone()
}

/// Moves `x` along the direction by the largest step keeping every value in
/// `[0, 1]`. Of the two signs, prefers the one making more edges integral, then
/// the one whose lowest newly integral edge is smaller, then the positive one.
/// Returns the edges that became integral.
pub(crate) fn saturate(x: &mut [Rational], direction: &KernelDirection) -> Vec<usize> {
    let one = Rational::one();
    let candidate = |sign: bool| -> (Rational, Vec<usize>) {
        let mut step: Option<Rational> = None;
        for (e, c) in &direction.coefficients {
            let c = if sign { c.clone() } else { -c.clone() };
            let room = if c.is_positive() {
                (&one - &x[*e]) / &c
            } else {
                &x[*e] / -c
            };
            if step.as_ref().is_none_or(|s| room < *s) {
                step = Some(room);
            }
        }
        let step = step.expect("direction has support");
        let step = if sign { step } else { -step };
        let integral = direction
            .coefficients
            .iter()
            .filter(|(e, c)| (&x[*e] + &step * c).is_integer())
            .map(|(e, _)| *e)
            .collect();
        (step, integral)
    };
    let (plus_step, plus) = candidate(true);
    let (minus_step, minus) = candidate(false);
    let take_plus = match plus.len().cmp(&minus.len()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => plus.first() <= minus.first(),
    };
    let (step, integral) = if take_plus { (plus_step, plus) } else { (minus_step, minus) };
    for (e, c) in &direction.coefficients {
        x[*e] = &x[*e] + &step * c;
    }
    integral
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rounding::ratio;

    fn all_active(g: &Graph) -> Vec<bool> {
        vec![true; g.edge_count()]
    }

    fn assert_kernel(g: &Graph, d: &KernelDirection) {
        assert!(!d.coefficients().is_empty());
        for v in 0..g.vertex_count() {
            assert!(d.vertex_sum(g, v).is_zero(), "vertex {v} sum nonzero in {d:?}");
        }
    }

    #[test]
    fn even_cycle_alternates() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let active = all_active(&g);
        let d = find_kernel_direction(&SupportView::new(&g, &active), 0).unwrap();
        assert_kernel(&g, &d);
        let coeffs: Vec<i64> = d
            .coefficients()
            .iter()
            .map(|(_, c)| c.to_integer().try_into().unwrap())
            .collect();
        assert!(coeffs == vec![1, -1, 1, -1] || coeffs == vec![-1, 1, -1, 1]);
    }

    #[test]
    fn dumbbell_doubles_the_bridge() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let active = all_active(&g);
        let d = find_kernel_direction(&SupportView::new(&g, &active), 0).unwrap();
        assert_kernel(&g, &d);
        assert_eq!(d.coefficient(3).unwrap().abs(), ratio(2, 1));
        for e in [0, 1, 2, 4, 5, 6] {
            assert_eq!(d.coefficient(e).unwrap().abs(), ratio(1, 1));
        }
    }

    #[test]
    fn long_dumbbell_and_bowtie_and_theta() {
        let graphs = [
            // triangles joined by a path of length 3
            vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)],
            // bowtie
            vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)],
            // two triangles sharing an edge: contains a 4-cycle
            vec![(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)],
            // 5-cycle plus chord making a triangle and a 4-cycle
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)],
            // pentagon and triangle joined by an edge, rooted far away
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6), (6, 7), (7, 5)],
        ];
        for pairs in graphs {
            let n = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
            let g = Graph::new(n, &pairs).unwrap();
            let active = all_active(&g);
            for root in 0..n {
                let d = find_kernel_direction(&SupportView::new(&g, &active), root)
                    .unwrap_or_else(|| panic!("no direction in {pairs:?} from {root}"));
                assert_kernel(&g, &d);
            }
        }
    }

    #[test]
    fn trees_and_unicyclic_odd_have_none() {
        let tree = Graph::new(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let active = all_active(&tree);
        assert!(find_kernel_direction(&SupportView::new(&tree, &active), 0).is_none());
        let lolli = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let active = all_active(&lolli);
        assert!(find_kernel_direction(&SupportView::new(&lolli, &active), 4).is_none());
    }

    #[test]
    fn inactive_edges_are_ignored() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let active = vec![true, true, true, false];
        assert!(find_kernel_direction(&SupportView::new(&g, &active), 0).is_none());
    }

    #[test]
    fn pendant_path_and_star() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let active = all_active(&path);
        let d = pendant_direction(&SupportView::new(&path, &active), 1).unwrap();
        assert_eq!(d.coefficients(), &[(0, ratio(1, 1)), (1, ratio(-1, 1))]);
        assert!(d.vertex_sum(&path, 1).is_zero());

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let active = all_active(&star);
        let d = pendant_direction(&SupportView::new(&star, &active), 0).unwrap();
        assert_eq!(d.coefficients().len(), 2);
        assert!(d.vertex_sum(&star, 0).is_zero());
    }

    #[test]
    fn pendant_lollipop_uses_halves() {
        // triangle 0-1-2 with pendant 2-3
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let active = all_active(&g);
        let d = pendant_direction(&SupportView::new(&g, &active), 0).unwrap();
        assert_eq!(d.coefficient(3), Some(&ratio(1, 1)));
        let halves: Vec<_> = [1, 0, 2].iter().map(|&e| d.coefficient(e).unwrap().clone()).collect();
        assert_eq!(halves, vec![ratio(-1, 2), ratio(1, 2), ratio(-1, 2)]);
        for v in 0..3 {
            assert!(d.vertex_sum(&g, v).is_zero());
        }
        // longer hanging path
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let active = all_active(&g);
        let d = pendant_direction(&SupportView::new(&g, &active), 5).unwrap();
        for v in 0..5 {
            assert!(d.vertex_sum(&g, v).is_zero());
        }
    }

    #[test]
    fn pendant_rejects_lonely_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let active = all_active(&g);
        assert!(pendant_direction(&SupportView::new(&g, &active), 0).is_err());
    }

    #[test]
    fn saturation_stays_in_unit_interval() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let active = all_active(&g);
        let d = find_kernel_direction(&SupportView::new(&g, &active), 0).unwrap();
        let mut x = vec![ratio(1, 3), ratio(1, 2), ratio(2, 3), ratio(1, 4)];
        let before: Vec<_> = (0..4).map(|v| sum_at(&g, &x, v)).collect();
        let fixed = saturate(&mut x, &d);
        assert!(!fixed.is_empty());
        for (v, sum) in before.iter().enumerate() {
            assert_eq!(&sum_at(&g, &x, v), sum);
        }
        for value in &x {
            assert!(*value >= Rational::zero() && *value <= Rational::one());
        }
    }

    fn sum_at(g: &Graph, x: &[Rational], v: usize) -> Rational {
        g.adjacency(v).iter().fold(Rational::zero(), |acc, &(_, e)| acc + &x[e])
    }
}
