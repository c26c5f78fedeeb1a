//! Taut angle structures: each tetrahedron puts angle π on one pair of
//! opposite edges and 0 elsewhere, and every edge collects exactly two π
//! angles over all of its tetrahedron instances.

use std::collections::HashMap;
use std::rc::Rc;

use rayon::prelude::*;

use serde::{Deserialize, Serialize};

use super::dp::{accumulate, relayout, Layout};
use super::{check_decomposition, on_edge, require_dim, tet_edges, AppError};
use crate::mso::{and, exists, forall, member, not, or, Formula, Sort};
use crate::tdecomp::{nice_schedule, NiceOp, TreeDecomposition};
use crate::triangulation::{Skeleton, Triangulation};

/// Which opposite edge pair of a tetrahedron carries the π angles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TautType {
    /// Edges 01 and 23.
    T1,
    /// Edges 02 and 13.
    T2,
    /// Edges 03 and 12.
    T3,
}

impl TautType {
    pub const ALL: [TautType; 3] = [TautType::T1, TautType::T2, TautType::T3];

    /// Vertex pairs of the two π edges.
    pub fn pi_edges(self) -> [[usize; 2]; 2] {
        match self {
            TautType::T1 => [[0, 1], [2, 3]],
            TautType::T2 => [[0, 2], [1, 3]],
            TautType::T3 => [[0, 3], [1, 2]],
        }
    }

    /// Positions of the π edges in [`TET_EDGES`](super::TET_EDGES) order.
    fn pi_slots(self) -> [usize; 2] {
        match self {
            TautType::T1 => [0, 3],
            TautType::T2 => [1, 4],
            TautType::T3 => [5, 2],
        }
    }
}

/// One type per tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TautWitness {
    pub types: Vec<TautType>,
}

fn edge_table(sk: &Skeleton) -> Vec<[usize; 6]> {
    (0..sk.size()).map(|t| tet_edges(sk, t)).collect()
}

/// Whether every edge receives exactly two π angles.
pub fn is_taut(sk: &Skeleton, types: &[TautType]) -> bool {
    if types.len() != sk.size() {
        return false;
    }
    let mut count = vec![0usize; sk.faces(1).len()];
    for (t, ty) in types.iter().enumerate() {
        let edges = tet_edges(sk, t);
        for slot in ty.pi_slots() {
            count[edges[slot]] += 1;
        }
    }
    count.iter().all(|&c| c == 2)
}

/// Tries all `3^n` assignments in lexicographic order with pruning; returns
/// the first taut one.
pub fn taut_bruteforce(t: &Triangulation, sk: &Skeleton) -> Result<Option<TautWitness>, AppError> {
    require_dim(t, 3)?;
    let n = t.size();
    let edges = edge_table(sk);
    let mut last = vec![0usize; sk.faces(1).len()];
    for (tet, es) in edges.iter().enumerate() {
        for &e in es {
            last[e] = last[e].max(tet);
        }
    }
    let mut settle: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &l) in last.iter().enumerate() {
        settle[l].push(e);
    }

    struct Search<'a> {
        edges: &'a [[usize; 6]],
        settle: &'a [Vec<usize>],
        count: Vec<u8>,
        types: Vec<TautType>,
    }
    impl Search<'_> {
        /// Places `ty` on the next tetrahedron; false (with nothing placed)
        /// if some edge is overfull or settles with the wrong count.
        fn place(&mut self, ty: TautType) -> bool {
            let tet = self.types.len();
            let slots = ty.pi_slots().map(|s| self.edges[tet][s]);
            for &e in &slots {
                self.count[e] += 1;
            }
            let ok = slots.iter().all(|&e| self.count[e] <= 2) && self.settle[tet].iter().all(|&e| self.count[e] == 2);
            if ok {
                self.types.push(ty);
            } else {
                for &e in &slots {
                    self.count[e] -= 1;
                }
            }
            ok
        }

        fn unplace(&mut self) {
            let tet = self.types.len() - 1;
            let ty = self.types.pop().unwrap();
            for s in ty.pi_slots() {
                self.count[self.edges[tet][s]] -= 1;
            }
        }

        fn go(&mut self) -> bool {
            if self.types.len() == self.edges.len() {
                return true;
            }
            for ty in TautType::ALL {
                if self.place(ty) {
                    if self.go() {
                        return true;
                    }
                    self.unplace();
                }
            }
            false
        }
    }
    // the first two tetrahedra are fixed per worker; `find_map_first` keeps
    // the lexicographically first witness
    let depth = n.min(2);
    let prefixes: Vec<Vec<TautType>> = (0..3usize.pow(depth as u32))
        .map(|code| {
            (0..depth)
                .map(|i| TautType::ALL[code / 3usize.pow((depth - 1 - i) as u32) % 3])
                .collect()
        })
        .collect();
    Ok(prefixes.par_iter().find_map_first(|prefix| {
        let mut s = Search {
            edges: &edges,
            settle: &settle,
            count: vec![0; last.len()],
            types: Vec::with_capacity(n),
        };
        (prefix.iter().all(|&ty| s.place(ty)) && s.go()).then_some(TautWitness { types: s.types })
    }))
}

enum Trace {
    Nil,
    Pick(usize, u8, Rc<Trace>),
    Both(Rc<Trace>, Rc<Trace>),
}

fn read_trace(trace: &Rc<Trace>, out: &mut [TautType]) {
    let mut stack = vec![trace.clone()];
    while let Some(t) = stack.pop() {
        match &*t {
            Trace::Nil => {}
            Trace::Pick(tet, ty, rest) => {
                out[*tet] = TautType::ALL[*ty as usize];
                stack.push(rest.clone());
            }
            Trace::Both(a, b) => {
                stack.push(a.clone());
                stack.push(b.clone());
            }
        }
    }
}

type Table = HashMap<Vec<u8>, Rc<Trace>>;

/// Remaining key bytes and trace of a child entry, grouped by its type prefix.
type Partner<'a> = (&'a [u8], &'a Rc<Trace>);

/// Dynamic program over a tree decomposition of the dual graph.
///
/// A state fixes the type of each bag tetrahedron and the number of π
/// angles (capped at 3) that forgotten tetrahedra gave to each edge of the
/// bag tetrahedra. A tetrahedron's angles are counted when it is forgotten,
/// and an edge must have exactly two once it leaves the bag's edge set.
pub fn taut_dp(t: &Triangulation, sk: &Skeleton, td: &TreeDecomposition) -> Result<Option<TautWitness>, AppError> {
    require_dim(t, 3)?;
    if t.size() == 0 {
        return Ok(Some(TautWitness { types: Vec::new() }));
    }
    check_decomposition(t, td)?;
    let edges = edge_table(sk);
    let mut stack: Vec<(Layout, Table)> = Vec::new();
    for op in nice_schedule(td, 0) {
        match op {
            NiceOp::Leaf => {
                let mut table = Table::new();
                table.insert(Vec::new(), Rc::new(Trace::Nil));
                stack.push((Layout::default(), table));
            }
            NiceOp::Introduce(tet) => {
                let (layout, table) = stack.pop().unwrap();
                let next = layout.with(tet, &edges);
                let map = layout.map_into(&next);
                let slot = next.tet_slot(tet).unwrap();
                let mut out = Table::with_capacity(table.len() * 3);
                for (key, trace) in table {
                    let base = relayout(&key, &map, next.width(), 0);
                    for ty in 0..3u8 {
                        let mut k = base.clone();
                        k[slot] = ty;
                        out.insert(k, trace.clone());
                    }
                }
                stack.push((next, out));
            }
            NiceOp::Forget(tet) => {
                let (layout, table) = stack.pop().unwrap();
                let next = layout.without(tet, &edges);
                let map = layout.map_into(&next);
                let tslot = layout.tet_slot(tet).unwrap();
                let leaving: Vec<usize> = layout
                    .edges
                    .iter()
                    .filter(|e| next.edge_slot(**e).is_none())
                    .map(|&e| layout.edge_slot(e).unwrap())
                    .collect();
                let mut out = Table::with_capacity(table.len());
                for (mut key, trace) in table {
                    let ty = key[tslot];
                    for s in TautType::ALL[ty as usize].pi_slots() {
                        let slot = layout.edge_slot(edges[tet][s]).unwrap();
                        key[slot] = (key[slot] + 1).min(3);
                    }
                    if leaving.iter().any(|&s| key[s] != 2) {
                        continue;
                    }
                    let k = relayout(&key, &map, next.width(), 0);
                    out.entry(k).or_insert_with(|| Rc::new(Trace::Pick(tet, ty, trace)));
                }
                stack.push((next, out));
            }
            NiceOp::Join => {
                let (layout, b) = stack.pop().unwrap();
                let (_, a) = stack.pop().unwrap();
                let nt = layout.tets.len();
                let mut by_types: HashMap<&[u8], Vec<Partner<'_>>> = HashMap::new();
                for (k, v) in &b {
                    by_types.entry(&k[..nt]).or_default().push((&k[nt..], v));
                }
                let mut out = Table::new();
                for (ka, va) in &a {
                    let Some(matches) = by_types.get(&ka[..nt]) else {
                        continue;
                    };
                    for (counts, vb) in matches {
                        let mut k = ka.clone();
                        for (x, y) in k[nt..].iter_mut().zip(counts.iter()) {
                            *x = (*x + y).min(3);
                        }
                        accumulate(&mut out, k, Rc::new(Trace::Both(va.clone(), (*vb).clone())), |_, _| {});
                    }
                }
                stack.push((layout, out));
            }
        }
    }
    let (_, table) = stack.pop().expect("schedule leaves one state");
    Ok(table.get(&Vec::new()).map(|trace| {
        let mut types = vec![TautType::T1; t.size()];
        read_trace(trace, &mut types);
        TautWitness { types }
    }))
}

const TYPE_SETS: [&str; 3] = ["T1", "T2", "T3"];

/// `s` gives at least one π angle to `f`.
fn gives_one(f: &str, s: &str) -> Formula {
    or(TautType::ALL
        .iter()
        .zip(TYPE_SETS)
        .map(|(ty, set)| {
            let [p, q] = ty.pi_edges();
            and(vec![member(s, set), or(vec![on_edge(f, s, p), on_edge(f, s, q)])])
        })
        .collect())
}

/// `s` gives two π angles to `f`.
fn gives_two(f: &str, s: &str) -> Formula {
    or(TautType::ALL
        .iter()
        .zip(TYPE_SETS)
        .map(|(ty, set)| {
            let [p, q] = ty.pi_edges();
            and(vec![member(s, set), on_edge(f, s, p), on_edge(f, s, q)])
        })
        .collect())
}

fn others_give_none(f: &str, exclude: &[&str]) -> Formula {
    let distinct = and(exclude.iter().map(|x| not(crate::mso::eq("u", x))).collect());
    forall(
        Sort::Face(3),
        "u",
        crate::mso::implies(distinct, not(gives_one(f, "u"))),
    )
}

/// Sentence over 3-dimensional triangulations: `T1, T2, T3` partition the
/// tetrahedra and each edge collects exactly two π angles, either both from
/// one tetrahedron or one each from two.
pub fn taut_sentence() -> Formula {
    let partition = forall(
        Sort::Face(3),
        "s",
        and(vec![
            or(TYPE_SETS.iter().map(|x| member("s", x)).collect()),
            not(and(vec![member("s", "T1"), member("s", "T2")])),
            not(and(vec![member("s", "T1"), member("s", "T3")])),
            not(and(vec![member("s", "T2"), member("s", "T3")])),
        ]),
    );
    let single = exists(
        Sort::Face(3),
        "s",
        and(vec![gives_two("f", "s"), others_give_none("f", &["s"])]),
    );
    let pair = exists(
        Sort::Face(3),
        "s",
        exists(
            Sort::Face(3),
            "t",
            and(vec![
                not(crate::mso::eq("s", "t")),
                gives_one("f", "s"),
                not(gives_two("f", "s")),
                gives_one("f", "t"),
                not(gives_two("f", "t")),
                others_give_none("f", &["s", "t"]),
            ]),
        ),
    );
    let edges = forall(Sort::Face(1), "f", or(vec![single, pair]));
    let body = and(vec![partition, edges]);
    TYPE_SETS
        .iter()
        .rev()
        .fold(body, |acc, set| exists(Sort::FaceSet(3), set, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compute_skeleton;
    use crate::tdecomp::min_fill_decomposition;
    use crate::triangulation::dual_graph;

    #[test]
    fn single_tetrahedron_has_none() {
        let t = Triangulation::new(3, 1).unwrap();
        let sk = compute_skeleton(&t);
        assert_eq!(taut_bruteforce(&t, &sk).unwrap(), None);
        let td = TreeDecomposition::single_bag(1);
        assert_eq!(taut_dp(&t, &sk, &td).unwrap(), None);
    }

    #[test]
    fn empty_triangulation_is_vacuously_taut() {
        let t = Triangulation::new(3, 0).unwrap();
        let sk = compute_skeleton(&t);
        assert_eq!(taut_bruteforce(&t, &sk).unwrap(), Some(TautWitness { types: vec![] }));
    }

    #[test]
    fn dp_agrees_on_fixtures() {
        for t in [
            crate::fixtures::s3_two_tet(),
            crate::fixtures::one_tet_closed(),
            crate::fixtures::solid_torus(),
        ] {
            let sk = compute_skeleton(&t);
            let td = min_fill_decomposition(&dual_graph(&t));
            let brute = taut_bruteforce(&t, &sk).unwrap();
            let dp = taut_dp(&t, &sk, &td).unwrap();
            assert_eq!(brute.is_some(), dp.is_some());
            if let Some(w) = dp {
                assert!(is_taut(&sk, &w.types));
            }
        }
    }

    #[test]
    fn wrong_dimension() {
        let t = crate::fixtures::klein_bottle();
        let sk = compute_skeleton(&t);
        assert!(matches!(taut_bruteforce(&t, &sk), Err(AppError::WrongDimension { .. })));
    }
}
