#![allow(dead_code)]

use std::collections::BTreeSet;

use triwidth_core::graphs::Origin;
use triwidth_core::graphs::{EdgeColouredGraph, SimpleGraph};
use triwidth_core::mso::{library, Value};
use triwidth_core::{Perm, Triangulation};

pub fn colour_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("c{i}")).collect()
}

/// Every edge-coloured simple graph on `1..=max_nodes` nodes with at most one
/// arc per pair, colours `0..k`, one representative per isomorphism class.
pub fn coloured_graphs(max_nodes: usize, k: usize) -> Vec<EdgeColouredGraph> {
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = Perm::all(n);
        let mut seen: BTreeSet<Vec<(usize, usize, usize)>> = BTreeSet::new();
        let total = (k + 1).pow(pairs.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut arcs = Vec::new();
            for &(a, b) in &pairs {
                let choice = c % (k + 1);
                c /= k + 1;
                if choice > 0 {
                    arcs.push((a, b, choice - 1));
                }
            }
            let canonical = perms
                .iter()
                .map(|p| {
                    let mut v: Vec<_> = arcs
                        .iter()
                        .map(|&(a, b, col)| {
                            let (x, y) = (p.apply(a), p.apply(b));
                            (x.min(y), x.max(y), col)
                        })
                        .collect();
                    v.sort_unstable();
                    v
                })
                .min()
                .unwrap();
            if seen.insert(canonical) {
                out.push(EdgeColouredGraph::new(n, colour_names(k), arcs).unwrap());
            }
        }
    }
    out
}

pub const GRAPH_SENTENCES: &[&str] = &[
    "(forall node v (= v v))",
    "(exists node v true)",
    "(exists arc e true)",
    "(forall arc e (exists node v (inc e v)))",
    "(exists node u (exists node v (adj u v)))",
    "(exists node u (exists node v (adjc 1 u v)))",
    "(exists node u (exists node v (adjc 2 u v)))",
    "(forall arc e (or (col 1 e) (col 2 e)))",
    "(exists arc e (and (col 1 e) (col 2 e)))",
    "(forall node u (forall node v (implies (adj u v) (or (adjc 1 u v) (adjc 2 u v)))))",
    "(exists nodeset A (forall node u (forall node v (implies (adj u v) (or (and (in u A) (not (in v A))) (and (in v A) (not (in u A))))))))",
    "(exists arcset M (forall node v (exists arc e (and (in e M) (inc e v)))))",
    "(exists arcset M (forall node v (exists arc e (and (in e M) (inc e v) (forall arc f (implies (and (in f M) (inc f v)) (= e f)))))))",
    "(forall nodeset X (implies (and (exists node a (in a X)) (exists node b (not (in b X)))) (exists node u (exists node v (and (in u X) (not (in v X)) (adj u v))))))",
    "(exists node v (exists arc e (exists arc f (and (inc e v) (inc f v) (not (= e f))))))",
    "(exists node a (exists node b (exists node c (and (adj a b) (adj b c) (adj a c)))))",
    "(forall arc e (implies (col 2 e) (exists arc f (exists node v (and (col 1 f) (inc e v) (inc f v))))))",
    "(exists nodeset X (and (exists node v (in v X)) (exists node w (not (in w X))) (forall node u (forall node v (implies (and (in u X) (adjc 1 u v)) (in v X))))))",
    "(forall arcset S (exists node v (forall arc e (implies (in e S) (not (inc e v))))))",
    "(exists arcset S (and (forall arc e (implies (in e S) (col 2 e))) (exists arc f (in f S))))",
];

pub fn origin_value(enc_origin: &[Origin], v: &Value) -> Value {
    let map = |x: usize| match enc_origin[x] {
        Origin::Node { node } => node,
        Origin::Arc { arc } => arc,
        Origin::Clique { .. } => panic!("clique node in a solution"),
    };
    match v {
        Value::Element(x) => Value::Element(map(*x)),
        Value::Set(xs) => {
            let mut ys: Vec<usize> = xs.iter().map(|&x| map(x)).collect();
            ys.sort_unstable();
            Value::Set(ys)
        }
    }
}

pub fn tri_sentences(d: usize) -> Vec<String> {
    let top: String = (0..d as u8).map(|x| x.to_string()).collect();
    let mut out = vec![
        "(forall face 0 v (exists face 1 e (or (sub 0 v e) (sub 1 v e))))".to_string(),
        "(exists face 0 v (exists face 1 e (and (sub 0 v e) (sub 1 v e))))".to_string(),
        format!("(forall face 1 e (exists face {d} s (sub 01 e s)))"),
        "(exists face 0 a (exists face 0 b (not (= a b))))".to_string(),
        "(exists faceset 0 X (and (exists face 0 v (in v X)) (exists face 0 w (not (in w X))) (forall face 1 e (forall face 0 a (forall face 0 b (implies (and (sub 0 a e) (sub 1 b e) (in a X)) (in b X)))))))".to_string(),
        format!("(forall face {d} s (exists face 0 v (sub 0 v s)))"),
        format!("(exists face {d} s (exists face 0 v (and (sub 0 v s) (sub 1 v s))))"),
        format!("(forall face 1 e (forall face 1 f (implies (exists face {d} s (and (sub 01 e s) (sub 12 f s))) (not (= e f)))))"),
        format!("(exists faceset {d} S (forall face {d} s (in s S)))"),
        format!("(forall face {} f (exists face {d} s (sub {top} f s)))", d - 1),
    ];
    if d == 2 {
        out.push(library::orientable_surface().to_string());
    }
    out
}

/// Every triangulation on `size` simplices of dimension `dim`: each partial
/// pairing of facet slots with every admissible gluing map.
pub fn all_triangulations(dim: usize, size: usize) -> Vec<Triangulation> {
    fn rec(t: &Triangulation, slots: &[(usize, usize)], maps: &[Vec<Perm>], out: &mut Vec<Triangulation>) {
        let Some((&(s, f), rest)) = slots.split_first() else {
            out.push(t.clone());
            return;
        };
        if t.partner(s, f).is_some() {
            return rec(t, rest, maps, out);
        }
        rec(t, rest, maps, out);
        for &(s2, f2) in rest {
            if t.partner(s2, f2).is_some() {
                continue;
            }
            for p in maps.iter().flatten().filter(|p| p.apply(f) == f2) {
                let mut u = t.clone();
                u.glue(s, f, s2, f2, p.clone()).unwrap();
                rec(&u, rest, maps, out);
            }
        }
    }
    let slots: Vec<(usize, usize)> = (0..size).flat_map(|s| (0..=dim).map(move |f| (s, f))).collect();
    let maps = vec![Perm::all(dim + 1)];
    let mut out = Vec::new();
    rec(&Triangulation::new(dim, size).unwrap(), &slots, &maps, &mut out);
    out
}

pub fn three_colourable_oracle(g: &SimpleGraph) -> bool {
    let n = g.nodes();
    (0..3usize.pow(n as u32)).any(|code| {
        let colour: Vec<usize> = (0..n).map(|v| code / 3usize.pow(v as u32) % 3).collect();
        g.arcs().iter().all(|&(a, b)| colour[a] != colour[b])
    })
}

pub fn orientable_oracle(t: &Triangulation) -> bool {
    let n = t.size();
    (0..1u32 << n).any(|mask| {
        t.gluings().iter().all(|g| {
            let images: Vec<usize> = g.map.images().collect();
            let mut inversions = 0;
            for a in 0..images.len() {
                for b in a + 1..images.len() {
                    if images[a] > images[b] {
                        inversions += 1;
                    }
                }
            }
            let differ = (mask >> g.simplex & 1) != (mask >> g.other & 1);
            differ == (inversions % 2 == 0)
        })
    })
}
