//! Seeded random instances for tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graphs::{EdgeColouredGraph, SimpleGraph};
use crate::perm::Perm;
use crate::triangulation::Triangulation;

/// Uniform random gluing map sending facet `f1` to facet `f2`.
pub fn random_gluing_map<R: Rng + ?Sized>(rng: &mut R, dim: usize, f1: usize, f2: usize) -> Perm {
    let mut rest: Vec<usize> = (0..=dim).filter(|&x| x != f2).collect();
    rest.shuffle(rng);
    let mut images = vec![0; dim + 1];
    let mut it = rest.into_iter();
    for (v, image) in images.iter_mut().enumerate() {
        *image = if v == f1 { f2 } else { it.next().unwrap() };
    }
    Perm::from_images(&images).unwrap()
}

/// Pairs up a random selection of facet slots; each slot is glued with
/// probability about `glue_probability`.
pub fn random_triangulation<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    size: usize,
    glue_probability: f64,
) -> Triangulation {
    let mut t = Triangulation::new(dim, size).expect("dimension at least 1");
    let mut slots: Vec<(usize, usize)> = (0..size).flat_map(|s| (0..=dim).map(move |f| (s, f))).collect();
    slots.shuffle(rng);
    for pair in slots.chunks_exact(2) {
        if rng.gen_bool(glue_probability) {
            let ((s1, f1), (s2, f2)) = (pair[0], pair[1]);
            let map = random_gluing_map(rng, dim, f1, f2);
            t.glue(s1, f1, s2, f2, map).expect("fresh slots");
        }
    }
    t
}

/// A triangulation with every facet glued; needs an even slot count.
pub fn random_closed_triangulation<R: Rng + ?Sized>(rng: &mut R, dim: usize, size: usize) -> Triangulation {
    assert!((size * (dim + 1)).is_multiple_of(2), "odd number of facet slots");
    random_triangulation(rng, dim, size, 1.0)
}

/// Closed 3-dimensional triangulation whose dual graph is a path with
/// doubled arcs and a loop at each end, so its pathwidth is 1.
///
/// Tetrahedron `k` glues facet 0 to facet 1 of `k+1` and facet 2 to facet 3
/// of `k+1`; the first tetrahedron glues facet 1 to 3, the last 0 to 2.
pub fn layered_triangulation<R: Rng + ?Sized>(rng: &mut R, size: usize) -> Triangulation {
    assert!(size >= 1);
    let mut t = Triangulation::new(3, size).unwrap();
    for k in 0..size - 1 {
        let m = random_gluing_map(rng, 3, 0, 1);
        t.glue(k, 0, k + 1, 1, m).unwrap();
        let m = random_gluing_map(rng, 3, 2, 3);
        t.glue(k, 2, k + 1, 3, m).unwrap();
    }
    let m = random_gluing_map(rng, 3, 1, 3);
    t.glue(0, 1, 0, 3, m).unwrap();
    let m = random_gluing_map(rng, 3, 0, 2);
    t.glue(size - 1, 0, size - 1, 2, m).unwrap();
    t
}

/// A fixed closed member of the layered family whose tetrahedra chain in a
/// path; it admits a taut structure for every size, so DP states never die
/// out.
pub fn layered_taut_triangulation(size: usize) -> Triangulation {
    assert!(size >= 1);
    let map = |images: [usize; 4]| Perm::from_images(&images).unwrap();
    let mut t = Triangulation::new(3, size).unwrap();
    for k in 0..size - 1 {
        t.glue(k, 0, k + 1, 1, map([1, 0, 3, 2])).unwrap();
        t.glue(k, 2, k + 1, 3, map([1, 0, 3, 2])).unwrap();
    }
    t.glue(0, 1, 0, 3, map([0, 3, 1, 2])).unwrap();
    t.glue(size - 1, 0, size - 1, 2, map([2, 0, 3, 1])).unwrap();
    t
}

pub fn random_simple_graph<R: Rng + ?Sized>(rng: &mut R, nodes: usize, arc_probability: f64) -> SimpleGraph {
    let arcs: Vec<(usize, usize)> = (0..nodes)
        .flat_map(|u| (u + 1..nodes).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(arc_probability))
        .collect();
    SimpleGraph::new(nodes, arcs).unwrap()
}

/// Each (pair, colour) arc is present independently.
pub fn random_coloured_graph<R: Rng + ?Sized>(
    rng: &mut R,
    nodes: usize,
    colours: usize,
    arc_probability: f64,
) -> EdgeColouredGraph {
    let names = (1..=colours).map(|i| format!("c{i}")).collect();
    let mut arcs = Vec::new();
    for u in 0..nodes {
        for v in u + 1..nodes {
            for c in 0..colours {
                if rng.gen_bool(arc_probability) {
                    arcs.push((u, v, c));
                }
            }
        }
    }
    EdgeColouredGraph::new(nodes, names, arcs).unwrap()
}
