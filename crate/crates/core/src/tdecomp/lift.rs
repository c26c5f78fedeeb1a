//! Carrying a decomposition along the two encodings: edge-coloured graph to
//! simple graph, and dual graph to coloured Hasse diagram.

use super::{DecompositionError, TreeDecomposition};
use crate::graphs::{EdgeColouredGraph, EncodedGraph};
use crate::hasse::ColouredHasseDiagram;
use crate::triangulation::{dual_graph, Skeleton, Triangulation};

/// Each bag maps to its node images plus every clique node; each arc gets a
/// fresh leaf bag (arc node, both endpoint images, clique nodes) attached to
/// the first bag holding both endpoints.
pub fn lift_to_encoded(
    td: &TreeDecomposition,
    g: &EdgeColouredGraph,
    enc: &EncodedGraph,
) -> Result<TreeDecomposition, DecompositionError> {
    td.validate(g).map_err(DecompositionError::Invalid)?;
    let cliques: Vec<usize> = enc.clique_nodes().collect();
    let mut bags: Vec<Vec<usize>> = td
        .bags()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&v| enc.node_image(v))
                .chain(cliques.iter().copied())
                .collect()
        })
        .collect();
    let mut links = td.links().to_vec();
    for (e, a) in g.arcs().iter().enumerate() {
        let host = td
            .bags()
            .iter()
            .position(|b| b.binary_search(&a.u).is_ok() && b.binary_search(&a.v).is_ok())
            .expect("validated decomposition covers every arc");
        let mut bag = vec![enc.arc_image(e), enc.node_image(a.u), enc.node_image(a.v)];
        bag.extend(cliques.iter().copied());
        links.push((host, bags.len()));
        bags.push(bag);
    }
    Ok(TreeDecomposition::new(bags, links))
}

/// Same tree; each bag holds the diagram nodes of its simplices, all their
/// subfaces, and the empty node.
pub fn lift_to_hasse(
    td: &TreeDecomposition,
    t: &Triangulation,
    sk: &Skeleton,
    h: &ColouredHasseDiagram,
) -> Result<TreeDecomposition, DecompositionError> {
    td.validate(&dual_graph(t)).map_err(DecompositionError::Invalid)?;
    let bags = td
        .bags()
        .iter()
        .map(|b| {
            let mut bag: Vec<usize> = b
                .iter()
                .flat_map(|&s| sk.faces_of_simplex(s))
                .map(|f| h.node_of_face(f))
                .collect();
            bag.push(h.empty_node());
            bag
        })
        .collect();
    Ok(TreeDecomposition::new(bags, td.links().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graphs::encode_simple;
    use crate::hasse::build_hasse;
    use crate::triangulation::compute_skeleton;

    #[test]
    fn three_node_bag_with_two_colours() {
        let g = EdgeColouredGraph::new(3, vec!["a".into(), "b".into()], [(0, 1, 0), (1, 2, 1), (0, 2, 1)]).unwrap();
        let enc = encode_simple(&g);
        let td = TreeDecomposition::single_bag(3);
        let lifted = lift_to_encoded(&td, &g, &enc).unwrap();
        assert_eq!(lifted.bags()[0].len(), 10);
        assert!(lifted.is_valid(&enc.graph));
        assert!(lifted.width() < td.width() + 10);
    }

    #[test]
    fn arcless_lift() {
        let g = EdgeColouredGraph::new(2, vec!["a".into()], []).unwrap();
        let enc = encode_simple(&g);
        let td = TreeDecomposition::new(vec![vec![0], vec![1]], vec![(0, 1)]);
        let lifted = lift_to_encoded(&td, &g, &enc).unwrap();
        assert!(lifted.is_valid(&enc.graph));
        assert_eq!(lifted.width(), td.width() + 3);
    }

    #[test]
    fn hasse_lifts() {
        let t = fixtures::klein_bottle();
        let sk = compute_skeleton(&t);
        let h = build_hasse(&sk);
        let td = TreeDecomposition::single_bag(2);
        let lifted = lift_to_hasse(&td, &t, &sk, &h).unwrap();
        assert_eq!(lifted.bags()[0].len(), 7);
        assert!(lifted.is_valid(&h.graph));

        let t = fixtures::solid_torus();
        let sk = compute_skeleton(&t);
        let h = build_hasse(&sk);
        let lifted = lift_to_hasse(&TreeDecomposition::single_bag(1), &t, &sk, &h).unwrap();
        assert_eq!(lifted.width(), 8);
    }

    #[test]
    fn rejects_invalid_input() {
        let g = EdgeColouredGraph::new(2, vec!["a".into()], [(0, 1, 0)]).unwrap();
        let enc = encode_simple(&g);
        let td = TreeDecomposition::new(vec![vec![0], vec![1]], vec![(0, 1)]);
        assert!(lift_to_encoded(&td, &g, &enc).is_err());
    }
}
