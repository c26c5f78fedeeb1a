//! Exact treewidth for small graphs: branch and bound over elimination
//! orderings, memoised on the set of already-eliminated nodes.

use super::elimination::{decomposition_from_order, neighbour_sets};
use super::{min_fill_decomposition, DecompositionError, TreeDecomposition};
use crate::graphs::ArcPairs;

pub const EXACT_NODE_CAP: usize = 14;

/// Nodes outside `eliminated ∪ {v}` reachable from `v` through eliminated
/// nodes: the degree of `v` once `eliminated` is gone.
fn eliminated_degree(nb: &[u32], eliminated: u32, v: usize) -> u32 {
    let mut seen = 1u32 << v;
    let mut stack = vec![v];
    let mut reach = 0u32;
    while let Some(x) = stack.pop() {
        let mut next = nb[x] & !seen;
        seen |= next;
        reach |= next & !eliminated;
        next &= eliminated;
        while next != 0 {
            let y = next.trailing_zeros() as usize;
            next &= next - 1;
            stack.push(y);
        }
    }
    reach.count_ones()
}

pub fn exact_decomposition<G: ArcPairs + ?Sized>(graph: &G) -> Result<TreeDecomposition, DecompositionError> {
    let n = graph.node_count();
    if n > EXACT_NODE_CAP {
        return Err(DecompositionError::TooLargeForExact {
            nodes: n,
            cap: EXACT_NODE_CAP,
        });
    }
    if n == 0 {
        return Ok(TreeDecomposition::new(vec![Vec::new()], Vec::new()));
    }
    let adj = neighbour_sets(graph);
    let nb: Vec<u32> = adj.iter().map(|s| s.iter().fold(0u32, |m, &x| m | (1 << x))).collect();
    // any ordering at least as good as the heuristic is acceptable
    let bound = min_fill_decomposition(graph).width() as u32;
    const PRUNED: u32 = u32::MAX;
    let full = (1u32 << n) - 1;
    let mut best = vec![PRUNED; 1 << n];
    best[0] = 0;
    for set in 1..=full {
        let mut value = PRUNED;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = set & !(1 << v);
            if best[before as usize] == PRUNED {
                continue;
            }
            let w = best[before as usize].max(eliminated_degree(&nb, before, v));
            if w <= bound {
                value = value.min(w);
            }
        }
        best[set as usize] = value;
    }
    // walk back: the last node eliminated from each set
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let target = best[set as usize];
        let v = (0..n)
            .filter(|&v| set & (1 << v) != 0)
            .find(|&v| {
                let before = set & !(1 << v);
                best[before as usize] != PRUNED
                    && best[before as usize].max(eliminated_degree(&nb, before, v)) == target
            })
            .expect("optimal predecessor exists");
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    Ok(decomposition_from_order(adj, &order))
}
