//! Bag bookkeeping shared by the tetrahedron dynamic programs.
//!
//! A state lives on a bag of tetrahedra and records one byte per bag
//! tetrahedron followed by one byte per edge of the bag tetrahedra, in
//! ascending id order. Since the tetrahedra around an edge are connected in
//! the dual graph, an edge touched by already forgotten tetrahedra that
//! still has unforgotten ones lies in a bag tetrahedron; so an edge can be
//! settled as soon as it leaves the bag's edge set.

use std::collections::HashMap;
use std::hash::Hash;

/// Tetrahedra and edges of one bag, both sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Layout {
    pub tets: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Layout {
    pub fn new(tets: Vec<usize>, edges_of: &[[usize; 6]]) -> Self {
        let mut edges: Vec<usize> = tets.iter().flat_map(|&t| edges_of[t]).collect();
        edges.sort_unstable();
        edges.dedup();
        Layout { tets, edges }
    }

    pub fn width(&self) -> usize {
        self.tets.len() + self.edges.len()
    }

    pub fn tet_slot(&self, t: usize) -> Option<usize> {
        self.tets.binary_search(&t).ok()
    }

    pub fn edge_slot(&self, e: usize) -> Option<usize> {
        self.edges.binary_search(&e).ok().map(|i| self.tets.len() + i)
    }

    /// Where each slot of `self` lands in `other`, if it survives.
    pub fn map_into(&self, other: &Layout) -> Vec<Option<usize>> {
        let mut out: Vec<Option<usize>> = self.tets.iter().map(|&t| other.tet_slot(t)).collect();
        out.extend(self.edges.iter().map(|&e| other.edge_slot(e)));
        out
    }

    /// Adds a tetrahedron.
    pub fn with(&self, t: usize, edges_of: &[[usize; 6]]) -> Layout {
        let mut tets = self.tets.clone();
        if let Err(p) = tets.binary_search(&t) {
            tets.insert(p, t);
        }
        Layout::new(tets, edges_of)
    }

    /// Removes a tetrahedron.
    pub fn without(&self, t: usize, edges_of: &[[usize; 6]]) -> Layout {
        let tets = self.tets.iter().copied().filter(|&x| x != t).collect();
        Layout::new(tets, edges_of)
    }
}

/// Moves a key to a layout, filling new slots with `fill`.
pub(crate) fn relayout(key: &[u8], map: &[Option<usize>], width: usize, fill: u8) -> Vec<u8> {
    let mut out = vec![fill; width];
    for (i, m) in map.iter().enumerate() {
        if let Some(j) = m {
            out[*j] = key[i];
        }
    }
    out
}

/// Inserts or combines with `merge`.
pub(crate) fn accumulate<K: Eq + Hash, V>(map: &mut HashMap<K, V>, key: K, value: V, merge: impl FnOnce(&mut V, V)) {
    match map.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => merge(e.get_mut(), value),
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(value);
        }
    }
}
