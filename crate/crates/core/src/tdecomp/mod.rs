//! Tree decompositions: validation, construction, lifting along the
//! encodings, and conversion to an introduce/forget/join schedule for
//! dynamic programming.

mod elimination;
mod exact;
mod heuristic;
mod lift;
mod nice;
mod text;

pub use exact::{exact_decomposition, EXACT_NODE_CAP};
pub use heuristic::min_fill_decomposition;
pub use lift::{lift_to_encoded, lift_to_hasse};
pub use nice::{nice_schedule, NiceOp};
pub use text::{parse_decomposition, parse_decomposition_with};

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graphs::ArcPairs;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("exact decomposition is limited to {cap} nodes, graph has {nodes}")]
    TooLargeForExact { nodes: usize, cap: usize },
    #[error("invalid decomposition: {0}")]
    Invalid(Violation),
}

/// The first failed condition found by [`TreeDecomposition::validate`].
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    #[error("decomposition has no bags")]
    NoBags,
    #[error("link {a}-{b} references a missing bag")]
    BadLink { a: usize, b: usize },
    #[error("links do not form a tree")]
    NotATree,
    #[error("bag {bag} contains unknown node {node}")]
    UnknownNode { bag: usize, node: usize },
    #[error("node {node} is in no bag")]
    NodeUncovered { node: usize },
    #[error("no bag contains both ends of arc {u}-{v}")]
    ArcUncovered { u: usize, v: usize },
    #[error("bags containing node {node} are not connected")]
    Disconnected { node: usize },
}

/// A tree of bags. Bags are sorted node lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    links: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Builds a decomposition without validating it.
    pub fn new(bags: Vec<Vec<usize>>, links: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, links }
    }

    /// One bag holding every node.
    pub fn single_bag(nodes: usize) -> Self {
        TreeDecomposition::new(vec![(0..nodes).collect()], Vec::new())
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    /// Largest bag size minus one (0 for a decomposition of empty bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.links {
            if a < self.bags.len() && b < self.bags.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for n in &mut adj {
            n.sort_unstable();
        }
        adj
    }

    fn check_tree(&self) -> Result<(), Violation> {
        let m = self.bags.len();
        if m == 0 {
            return Err(Violation::NoBags);
        }
        for &(a, b) in &self.links {
            if a >= m || b >= m {
                return Err(Violation::BadLink { a, b });
            }
        }
        if self.links.len() != m - 1 {
            return Err(Violation::NotATree);
        }
        let adj = self.adjacency();
        let mut seen = vec![false; m];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        if count != m {
            return Err(Violation::NotATree);
        }
        Ok(())
    }

    /// Checks that the links form a tree and the three decomposition
    /// conditions hold for `graph`. Loops only need their node covered;
    /// parallel arcs impose one condition.
    pub fn validate<G: ArcPairs + ?Sized>(&self, graph: &G) -> Result<(), Violation> {
        self.check_tree()?;
        let n = graph.node_count();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &x in bag {
                if x >= n {
                    return Err(Violation::UnknownNode { bag: i, node: x });
                }
                holders[x].push(i);
            }
        }
        if let Some(node) = holders.iter().position(Vec::is_empty) {
            return Err(Violation::NodeUncovered { node });
        }
        for (u, v) in graph.arc_pairs() {
            if u == v {
                continue;
            }
            if !self
                .bags
                .iter()
                .any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok())
            {
                return Err(Violation::ArcUncovered {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
        let adj = self.adjacency();
        for (node, hs) in holders.iter().enumerate() {
            if !connected_within(&adj, hs) {
                return Err(Violation::Disconnected { node });
            }
        }
        Ok(())
    }

    pub fn is_valid<G: ArcPairs + ?Sized>(&self, graph: &G) -> bool {
        self.validate(graph).is_ok()
    }
}

/// Whether the tree nodes in `subset` (sorted) induce a connected subtree.
pub(crate) fn connected_within(adj: &[Vec<usize>], subset: &[usize]) -> bool {
    let Some(&start) = subset.first() else { return true };
    let inside = |x: usize| subset.binary_search(&x).is_ok();
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] && inside(y) {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == subset.len()
}

/// Chooses a decomposition strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeMode {
    Heuristic,
    Exact,
}

pub fn decompose<G: ArcPairs + ?Sized>(
    graph: &G,
    mode: DecomposeMode,
) -> Result<TreeDecomposition, DecompositionError> {
    match mode {
        DecomposeMode::Heuristic => Ok(min_fill_decomposition(graph)),
        DecomposeMode::Exact => exact_decomposition(graph),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::SimpleGraph;

    /// Two triangles sharing an edge plus a pendant path.
    fn example_graph() -> SimpleGraph {
        SimpleGraph::new(6, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap()
    }

    #[test]
    fn width_two_example() {
        let g = example_graph();
        let td = TreeDecomposition::new(
            vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 4], vec![4, 5]],
            vec![(0, 1), (1, 2), (2, 3)],
        );
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn single_bag_is_valid() {
        let g = example_graph();
        let td = TreeDecomposition::single_bag(6);
        assert!(td.is_valid(&g));
        assert_eq!(td.width(), 5);
    }

    #[test]
    fn reports_violations() {
        let g = example_graph();
        let td = TreeDecomposition::new(
            vec![vec![0, 1, 2], vec![1, 2], vec![3, 4], vec![4, 5], vec![3]],
            vec![(0, 1), (1, 2), (2, 3), (1, 4)],
        );
        assert_eq!(td.validate(&g), Err(Violation::ArcUncovered { u: 1, v: 3 }));
        let td = TreeDecomposition::new(vec![vec![0, 1, 2, 3], vec![4, 5], vec![3, 4]], vec![(0, 1), (1, 2)]);
        assert_eq!(td.validate(&g), Err(Violation::Disconnected { node: 3 }));
        let td = TreeDecomposition::new(vec![vec![0], vec![1]], vec![]);
        assert_eq!(td.validate(&g), Err(Violation::NotATree));
        let td = TreeDecomposition::new(vec![vec![0, 1, 2, 3, 4]], vec![]);
        assert_eq!(td.validate(&g), Err(Violation::NodeUncovered { node: 5 }));
        let td = TreeDecomposition::new(vec![vec![0, 1, 2, 3, 4, 5, 6]], vec![]);
        assert_eq!(td.validate(&g), Err(Violation::UnknownNode { bag: 0, node: 6 }));
    }
}
