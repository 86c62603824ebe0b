use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A total edge colouring with colours `1..=colour_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColouring {
    colours: Vec<u32>,
    colour_count: u32,
}

impl EdgeColouring {
    pub fn new(colours: Vec<u32>, colour_count: u32) -> Result<Self> {
        if colour_count == 0 {
            return Err(Error::input("colour count must be positive"));
        }
        if let Some((e, &c)) = colours
            .iter()
            .enumerate()
            .find(|&(_, &c)| c == 0 || c > colour_count)
        {
            return Err(Error::input(format!(
                "edge {e} has colour {c}, outside 1..={colour_count}"
            )));
        }
        Ok(EdgeColouring { colours, colour_count })
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn colour(&self, e: usize) -> u32 {
        self.colours[e]
    }

    pub fn colour_count(&self) -> u32 {
        self.colour_count
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Edge indices of colour `c`, ascending.
    pub fn class(&self, c: u32) -> Vec<usize> {
        (0..self.colours.len()).filter(|&e| self.colours[e] == c).collect()
    }
}

/// First violation found by [`check_majority`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertex: usize,
    pub colour: u32,
    pub count: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityVerdict {
    pub pass: bool,
    /// `counts[v][i - 1]` edges of colour `i` at `v`.
    pub counts: Vec<Vec<usize>>,
    pub witness: Option<Witness>,
}

/// Checks that every colour occupies at most `floor(d(v)/k)` edges at every vertex.
/// The witness is the first violation in (vertex, colour) order.
pub fn check_majority(g: &Graph, c: &EdgeColouring, k: usize) -> Result<MajorityVerdict> {
    if k < 2 {
        return Err(Error::input(format!("k must be at least 2, got {k}")));
    }
    if c.len() != g.edge_count() {
        return Err(Error::input(format!(
            "colouring has {} edges, graph has {}",
            c.len(),
            g.edge_count()
        )));
    }
    let palette = c.colour_count() as usize;
    let mut counts = vec![vec![0usize; palette]; g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let slot = c.colour(e) as usize - 1;
        counts[u][slot] += 1;
        counts[v][slot] += 1;
    }
    let witness = counts.iter().enumerate().find_map(|(v, row)| {
        let cap = g.degree(v) / k;
        row.iter().position(|&n| n > cap).map(|i| Witness {
            vertex: v,
            colour: i as u32 + 1,
            count: row[i],
            cap,
        })
    });
    Ok(MajorityVerdict {
        pass: witness.is_none(),
        counts,
        witness,
    })
}
