//! Structures that formulas are interpreted in.

use crate::graphs::EdgeColouredGraph;
use crate::triangulation::{FaceRef, Skeleton};

use super::ast::{Signature, Sort};

enum Kind<'a> {
    Graph {
        graph: &'a EdgeColouredGraph,
        adjacent: Vec<bool>,
        /// Sorted 0-based colours of the arcs joining each ordered pair.
        colours: Vec<Vec<u32>>,
    },
    Tri(&'a Skeleton),
}

/// A graph or triangulation with lookup tables for the atomic relations.
pub struct Model<'a> {
    kind: Kind<'a>,
}

impl<'a> Model<'a> {
    pub fn graph(graph: &'a EdgeColouredGraph) -> Self {
        let n = graph.nodes();
        let mut adjacent = vec![false; n * n];
        let mut colours = vec![Vec::new(); n * n];
        for (i, a) in graph.arcs().iter().enumerate() {
            adjacent[a.u * n + a.v] = true;
            adjacent[a.v * n + a.u] = true;
            if let Some(c) = graph.arc_colour(i) {
                colours[a.u * n + a.v].push(c as u32);
                colours[a.v * n + a.u].push(c as u32);
            }
        }
        for c in &mut colours {
            c.sort_unstable();
        }
        Model {
            kind: Kind::Graph {
                graph,
                adjacent,
                colours,
            },
        }
    }

    pub fn triangulation(sk: &'a Skeleton) -> Self {
        Model { kind: Kind::Tri(sk) }
    }

    pub fn signature(&self) -> Signature {
        match &self.kind {
            Kind::Graph { graph, .. } => Signature::Graph {
                colours: graph.colour_count(),
            },
            Kind::Tri(sk) => Signature::Tri { dim: sk.dim() },
        }
    }

    /// Number of elements of an element sort (0 for sorts foreign to the
    /// signature).
    pub fn carrier(&self, sort: Sort) -> usize {
        match (&self.kind, sort.element()) {
            (Kind::Graph { graph, .. }, Sort::Node) => graph.nodes(),
            (Kind::Graph { graph, .. }, Sort::Arc) => graph.arcs().len(),
            (Kind::Tri(sk), Sort::Face(i)) if i <= sk.dim() => sk.faces(i).len(),
            _ => 0,
        }
    }

    pub(crate) fn inc(&self, e: usize, v: usize) -> bool {
        match &self.kind {
            Kind::Graph { graph, .. } => {
                let a = graph.arcs()[e];
                a.u == v || a.v == v
            }
            Kind::Tri(_) => false,
        }
    }

    pub(crate) fn adj(&self, u: usize, v: usize) -> bool {
        match &self.kind {
            Kind::Graph { graph, adjacent, .. } => adjacent[u * graph.nodes() + v],
            Kind::Tri(_) => false,
        }
    }

    /// `colour` is 1-based.
    pub(crate) fn col(&self, colour: usize, e: usize) -> bool {
        match &self.kind {
            Kind::Graph { graph, .. } => graph.arc_colour(e) == Some(colour - 1),
            Kind::Tri(_) => false,
        }
    }

    /// `colour` is 1-based.
    pub(crate) fn adjc(&self, colour: usize, u: usize, v: usize) -> bool {
        match &self.kind {
            Kind::Graph { graph, colours, .. } => colours[u * graph.nodes() + v]
                .binary_search(&((colour - 1) as u32))
                .is_ok(),
            Kind::Tri(_) => false,
        }
    }

    pub(crate) fn sub(&self, pi: &[usize], f: FaceRef, s: FaceRef) -> bool {
        match &self.kind {
            Kind::Tri(sk) => sk.subface_holds_unchecked(sk.face(f), pi, sk.face(s)),
            Kind::Graph { .. } => false,
        }
    }
}
