//! Tree decompositions from elimination orderings.

use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::graphs::ArcPairs;

pub(crate) fn neighbour_sets<G: ArcPairs + ?Sized>(graph: &G) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); graph.node_count()];
    for (u, v) in graph.arc_pairs() {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

/// Eliminates nodes in `order`; the bag of each node is the node plus its
/// neighbours at elimination time in the filled graph.
pub(crate) fn decomposition_from_order(mut adj: Vec<BTreeSet<usize>>, order: &[usize]) -> TreeDecomposition {
    let n = adj.len();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(n);
    for &v in order {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        let mut bag = nb.clone();
        bag.push(v);
        bags.push(bag);
        parent.push(nb.iter().map(|&u| position[u]).min());
    }
    let mut links = Vec::with_capacity(n - 1);
    let mut last_root: Option<usize> = None;
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => links.push((i, *p)),
            None => {
                if let Some(r) = last_root {
                    links.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition::new(bags, links)
}
