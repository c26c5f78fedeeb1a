//! Coloured Hasse diagram of a triangulation: one node per face plus an
//! empty-face node, with arcs between consecutive dimensions coloured by the
//! vertex correspondence of the smaller face inside the larger.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::graphs::EdgeColouredGraph;
use crate::perm::distinct_sequences;
use crate::triangulation::{FaceRef, Skeleton};

/// Arc colour: the empty colour, or the labels `π_0 .. π_i` that vertices
/// `0..i` of an i-face take in an (i+1)-face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HasseColour {
    Empty,
    Seq(Vec<u8>),
}

impl HasseColour {
    /// Sequence length; 0 for the empty colour.
    pub fn len(&self) -> usize {
        match self {
            HasseColour::Empty => 0,
            HasseColour::Seq(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, HasseColour::Empty)
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s == "-" {
            return Some(HasseColour::Empty);
        }
        let digits: Option<Vec<u8>> = s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect();
        digits.filter(|d| !d.is_empty()).map(HasseColour::Seq)
    }
}

impl fmt::Display for HasseColour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HasseColour::Empty => f.write_str("-"),
            HasseColour::Seq(s) => s.iter().try_for_each(|d| write!(f, "{d}")),
        }
    }
}

/// All colours for dimension `d`: the empty colour, then by length, then
/// lexicographically.
pub fn hasse_colours(d: usize) -> Vec<HasseColour> {
    let mut out = vec![HasseColour::Empty];
    for len in 1..=d {
        for seq in distinct_sequences(len, len) {
            out.push(HasseColour::Seq(seq.into_iter().map(|x| x as u8).collect()));
        }
    }
    out
}

/// Position of a colour in [`hasse_colours`].
pub fn colour_index(d: usize, colour: &HasseColour) -> Option<usize> {
    hasse_colours(d).iter().position(|c| c == colour)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum HasseNode {
    Face(FaceRef),
    #[serde(serialize_with = "serialize_empty")]
    Empty,
}

fn serialize_empty<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("empty")
}

#[derive(Clone, Debug)]
pub struct ColouredHasseDiagram {
    dim: usize,
    colours: Vec<HasseColour>,
    pub graph: EdgeColouredGraph,
    nodes: Vec<HasseNode>,
    offsets: Vec<usize>,
}

impl ColouredHasseDiagram {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn colours(&self) -> &[HasseColour] {
        &self.colours
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, index: usize) -> HasseNode {
        self.nodes[index]
    }

    pub fn node_of_face(&self, f: FaceRef) -> usize {
        self.offsets[f.dim] + f.id
    }

    pub fn empty_node(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Dimension of a node's face, `None` for the empty node.
    pub fn level(&self, index: usize) -> Option<usize> {
        match self.nodes[index] {
            HasseNode::Face(f) => Some(f.dim),
            HasseNode::Empty => None,
        }
    }

    pub fn arc_colour(&self, arc: usize) -> &HasseColour {
        &self.colours[self.graph.arcs()[arc].colour]
    }

    /// Nodes plus arcs.
    pub fn size(&self) -> usize {
        self.graph.size()
    }
}

/// `2^d (d+3) n`: the size bound for diagrams without self-identified faces.
pub fn hasse_size_bound(d: usize, simplices: usize) -> usize {
    (1usize << d) * (d + 3) * simplices
}

pub fn build_hasse(sk: &Skeleton) -> ColouredHasseDiagram {
    let d = sk.dim();
    let colours = hasse_colours(d);
    let mut nodes = Vec::new();
    let mut offsets = Vec::with_capacity(d + 1);
    for i in 0..=d {
        offsets.push(nodes.len());
        nodes.extend(sk.faces(i).iter().map(|f| HasseNode::Face(f.face_ref())));
    }
    nodes.push(HasseNode::Empty);
    let empty = nodes.len() - 1;

    let mut arcs: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for i in 0..d {
        let seqs = distinct_sequences(i + 1, i + 1);
        let colour_base = colours.iter().position(|c| c.len() == i + 1).unwrap();
        for g in sk.faces(i + 1) {
            for (s, eg) in &g.instances {
                for (k, pi) in seqs.iter().enumerate() {
                    let emb: Vec<u8> = pi.iter().map(|&p| eg[p]).collect();
                    let mask = emb.iter().fold(0usize, |m, &v| m | (1 << v));
                    let f = sk.face_at_mask(*s, mask);
                    if sk.face(f).has_instance(*s, &emb) {
                        arcs.insert((offsets[i] + f.id, offsets[i + 1] + g.id, colour_base + k));
                    }
                }
            }
        }
    }
    for v in 0..sk.faces(0).len() {
        arcs.insert((offsets[0] + v, empty, 0));
    }
    let names = colours.iter().map(ToString::to_string).collect();
    let graph = EdgeColouredGraph::new(nodes.len(), names, arcs).expect("diagram arcs are distinct");
    ColouredHasseDiagram {
        dim: d,
        colours,
        graph,
        nodes,
        offsets,
    }
}
