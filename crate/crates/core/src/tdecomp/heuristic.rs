//! Greedy min-fill elimination.

use super::elimination::{decomposition_from_order, neighbour_sets};
use super::TreeDecomposition;
use crate::graphs::ArcPairs;

/// Repeatedly eliminates the node adding the fewest fill arcs, breaking
/// ties by smaller degree, then by lower id.
pub fn min_fill_decomposition<G: ArcPairs + ?Sized>(graph: &G) -> TreeDecomposition {
    let original = neighbour_sets(graph);
    let n = original.len();
    let mut adj = original.clone();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (i, &a) in nb.iter().enumerate() {
                fill += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(&b)).count();
            }
            let key = (fill, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.unwrap();
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    decomposition_from_order(original, &order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::SimpleGraph;

    #[test]
    fn trees_have_width_one() {
        let g = SimpleGraph::new(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let td = min_fill_decomposition(&g);
        assert!(td.is_valid(&g));
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn complete_and_cycle() {
        let g = SimpleGraph::complete(5);
        assert_eq!(min_fill_decomposition(&g).width(), 4);
        let g = SimpleGraph::cycle(7);
        let td = min_fill_decomposition(&g);
        assert!(td.is_valid(&g));
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn disconnected_and_empty() {
        let g = SimpleGraph::new(4, [(0, 1)]).unwrap();
        let td = min_fill_decomposition(&g);
        assert!(td.is_valid(&g));
        let g = SimpleGraph::new(0, []).unwrap();
        assert!(min_fill_decomposition(&g).is_valid(&g));
    }
}
