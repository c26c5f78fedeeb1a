//! Encoding an edge-coloured graph as a simple graph: colour `i` (1-based)
//! becomes a clique on `i + 2` fresh nodes, and every arc becomes a node
//! adjacent to its two endpoints and to the first node of its colour clique.

use serde::Serialize;

use super::{EdgeColouredGraph, SimpleGraph};

/// What an encoded node stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    /// Node `index` (1-based) of the clique for colour `colour` (1-based).
    Clique {
        colour: usize,
        index: usize,
    },
    Node {
        node: usize,
    },
    Arc {
        arc: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EncodedGraph {
    pub graph: SimpleGraph,
    pub origin: Vec<Origin>,
    /// First clique node of each colour, 0-based colour index.
    #[serde(skip)]
    clique_start: Vec<usize>,
    #[serde(skip)]
    node_start: usize,
    #[serde(skip)]
    arc_start: usize,
}

impl EncodedGraph {
    pub fn node_image(&self, v: usize) -> usize {
        self.node_start + v
    }

    pub fn arc_image(&self, e: usize) -> usize {
        self.arc_start + e
    }

    /// Clique node `index` (1-based) for 1-based colour `colour`.
    pub fn clique_node(&self, colour: usize, index: usize) -> usize {
        self.clique_start[colour - 1] + index - 1
    }

    /// All clique nodes, in id order.
    pub fn clique_nodes(&self) -> std::ops::Range<usize> {
        0..self.node_start
    }
}

pub fn encode_simple(g: &EdgeColouredGraph) -> EncodedGraph {
    let k = g.colour_count();
    let mut origin = Vec::new();
    let mut arcs = Vec::new();
    let mut clique_start = Vec::with_capacity(k);
    for i in 1..=k {
        let start = origin.len();
        clique_start.push(start);
        for j in 1..=i + 2 {
            origin.push(Origin::Clique { colour: i, index: j });
        }
        for a in start..start + i + 2 {
            for b in a + 1..start + i + 2 {
                arcs.push((a, b));
            }
        }
    }
    let node_start = origin.len();
    origin.extend((0..g.nodes()).map(|node| Origin::Node { node }));
    let arc_start = origin.len();
    origin.extend((0..g.arcs().len()).map(|arc| Origin::Arc { arc }));
    for (e, a) in g.arcs().iter().enumerate() {
        let x = arc_start + e;
        arcs.push((node_start + a.u, x));
        arcs.push((node_start + a.v, x));
        if let Some(c) = g.arc_colour(e) {
            arcs.push((clique_start[c], x));
        }
    }
    let graph = SimpleGraph::new(origin.len(), arcs).expect("encoding is simple");
    EncodedGraph {
        graph,
        origin,
        clique_start,
        node_start,
        arc_start,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|V| + 4|E| + C(k+4, 3) - 4`: the size of the encoding.
pub fn encoded_size_formula(nodes: usize, arcs: usize, colours: usize) -> usize {
    nodes + 4 * arcs + binomial(colours + 4, 3) - 4
}
