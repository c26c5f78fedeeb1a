//! Dual graph: one node per simplex, one arc per facet gluing.

use serde::Serialize;

use super::Triangulation;

/// Multigraph with loops and parallel arcs, as produced by [`dual_graph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiGraph {
    pub nodes: usize,
    /// Unordered node pairs, stored with the smaller endpoint first.
    pub arcs: Vec<(usize, usize)>,
}

impl MultiGraph {
    /// Degree of every node; a loop contributes two.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes];
        for &(a, b) in &self.arcs {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn loop_count(&self) -> usize {
        self.arcs.iter().filter(|(a, b)| a == b).count()
    }
}

pub fn dual_graph(t: &Triangulation) -> MultiGraph {
    let arcs = t
        .gluings()
        .into_iter()
        .map(|g| (g.simplex.min(g.other), g.simplex.max(g.other)))
        .collect();
    MultiGraph { nodes: t.size(), arcs }
}
