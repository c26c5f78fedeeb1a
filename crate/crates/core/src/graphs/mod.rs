//! Simple graphs, edge-coloured graphs, and the encoding of the latter into
//! the former by colour cliques.

mod encode;
mod text;

pub use encode::{encode_simple, encoded_size_formula, EncodedGraph, Origin};
pub use text::{parse_graph, ParsedGraph};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("node {node} out of range ({nodes} nodes)")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("loop at node {0}")]
    Loop(usize),
    #[error("parallel arcs between {0} and {1}")]
    Parallel(usize, usize),
    #[error("colour index {colour} out of range ({colours} colours)")]
    ColourOutOfRange { colour: usize, colours: usize },
}

/// Anything with numbered nodes and unordered arcs; tree decompositions are
/// checked against this view.
pub trait ArcPairs {
    fn node_count(&self) -> usize;
    fn arc_pairs(&self) -> Vec<(usize, usize)>;
}

/// Graph without loops or parallel arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    nodes: usize,
    arcs: Vec<(usize, usize)>,
    #[serde(skip)]
    neighbours: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds a graph from arcs, rejecting loops and parallel arcs.
    pub fn new(nodes: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= nodes {
                    return Err(GraphError::NodeOutOfRange { node: x, nodes });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            out.push((u.min(v), u.max(v)));
        }
        let mut sorted = out.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::Parallel(w[0].0, w[0].1));
        }
        let mut neighbours = vec![Vec::new(); nodes];
        for &(u, v) in &out {
            neighbours[u].push(v);
            neighbours[v].push(u);
        }
        for n in &mut neighbours {
            n.sort_unstable();
        }
        Ok(SimpleGraph {
            nodes,
            arcs: out,
            neighbours,
        })
    }

    /// Builds a graph from arbitrary pairs, dropping loops and duplicates.
    pub fn from_pairs_lossy(nodes: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut arcs: Vec<(usize, usize)> = pairs
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        SimpleGraph::new(nodes, arcs).expect("cleaned arcs are simple")
    }

    pub fn complete(n: usize) -> Self {
        SimpleGraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        SimpleGraph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.neighbours[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.neighbours[u].binary_search(&v).is_ok()
    }

    /// `|V| + |E|`.
    pub fn size(&self) -> usize {
        self.nodes + self.arcs.len()
    }
}

impl ArcPairs for SimpleGraph {
    fn node_count(&self) -> usize {
        self.nodes
    }
    fn arc_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs.clone()
    }
}

impl ArcPairs for crate::triangulation::MultiGraph {
    fn node_count(&self) -> usize {
        self.nodes
    }
    fn arc_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs.clone()
    }
}

/// An arc of an edge-coloured graph; `colour` indexes the colour list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColouredArc {
    pub u: usize,
    pub v: usize,
    pub colour: usize,
}

/// Graph whose arcs carry colours from an ordered list; parallel arcs are
/// allowed only with distinct colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeColouredGraph {
    nodes: usize,
    colours: Vec<String>,
    arcs: Vec<ColouredArc>,
}

impl EdgeColouredGraph {
    pub fn new(
        nodes: usize,
        colours: Vec<String>,
        arcs: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (u, v, c) in arcs {
            for x in [u, v] {
                if x >= nodes {
                    return Err(GraphError::NodeOutOfRange { node: x, nodes });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if c >= colours.len() {
                return Err(GraphError::ColourOutOfRange {
                    colour: c,
                    colours: colours.len(),
                });
            }
            out.push(ColouredArc {
                u: u.min(v),
                v: u.max(v),
                colour: c,
            });
        }
        let mut sorted = out.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::Parallel(w[0].u, w[0].v));
        }
        Ok(EdgeColouredGraph {
            nodes,
            colours,
            arcs: out,
        })
    }

    /// A simple graph viewed as an edge-coloured graph with no colours.
    pub fn uncoloured(g: &SimpleGraph) -> Self {
        EdgeColouredGraph {
            nodes: g.nodes,
            colours: Vec::new(),
            arcs: g.arcs.iter().map(|&(u, v)| ColouredArc { u, v, colour: 0 }).collect(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    pub fn colour_count(&self) -> usize {
        self.colours.len()
    }

    pub fn arcs(&self) -> &[ColouredArc] {
        &self.arcs
    }

    /// Colour of an arc, or `None` for arcs of an uncoloured graph.
    pub fn arc_colour(&self, arc: usize) -> Option<usize> {
        let c = self.arcs[arc].colour;
        (c < self.colours.len()).then_some(c)
    }

    pub fn size(&self) -> usize {
        self.nodes + self.arcs.len()
    }

    /// Underlying simple graph: parallel arcs merged, colours dropped.
    pub fn skeleton(&self) -> SimpleGraph {
        SimpleGraph::from_pairs_lossy(self.nodes, self.arcs.iter().map(|a| (a.u, a.v)))
    }
}

impl ArcPairs for EdgeColouredGraph {
    fn node_count(&self) -> usize {
        self.nodes
    }
    fn arc_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs.iter().map(|a| (a.u, a.v)).collect()
    }
}
