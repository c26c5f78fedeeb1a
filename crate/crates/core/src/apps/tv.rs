//! Turaev-Viro state sums.
//!
//! Edges are coloured by half-integers `0, 1/2, .., (r-2)/2`, stored as
//! their numerators `0..=r-2`. A colouring is admissible when the three
//! colours on every triangle are admissible; its weight is
//! `α^|V| · Π β(edge colour) · Π γ(tetrahedron colours)`, with the six
//! colours of a tetrahedron read in the edge order `01, 02, 12, 23, 13, 03`.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dp::{accumulate, relayout, Layout};
use super::{check_decomposition, on_edge, require_closed, require_dim, tet_edges, AppError, TET_EDGES};
use crate::mso::{and, forall, implies, member, not, or, EvaluationMode, EvaluationProblem, Formula, Ring, Sort};
use crate::tdecomp::{nice_schedule, NiceOp, TreeDecomposition};
use crate::triangulation::{Skeleton, Triangulation};

/// Triangles of a tetrahedron as slots into the six edge colours.
const TET_FACES: [[usize; 3]; 4] = [[0, 1, 2], [2, 3, 4], [0, 4, 5], [1, 3, 5]];

/// Admissibility of three colours given as numerators: integral sum,
/// triangle inequalities and sum at most `r - 2`.
pub fn tv_admissible(r: usize, a: usize, b: usize, c: usize) -> bool {
    (a + b + c).is_multiple_of(2) && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * (r - 2)
}

/// Colour sextuples whose four triangles are admissible.
pub fn admissible_sextuples(r: usize) -> Vec<[u8; 6]> {
    let n = r - 1;
    let mut out = Vec::new();
    for code in 0..n.pow(6) {
        let mut s = [0u8; 6];
        let mut c = code;
        for x in s.iter_mut().rev() {
            *x = (c % n) as u8;
            c /= n;
        }
        if TET_FACES
            .iter()
            .all(|f| tv_admissible(r, s[f[0]] as usize, s[f[1]] as usize, s[f[2]] as usize))
        {
            out.push(s);
        }
    }
    out
}

/// Half-integer as text: `0`, `1/2`, `1`, `3/2`, ...
pub fn format_half(numerator: usize) -> String {
    if numerator.is_multiple_of(2) {
        (numerator / 2).to_string()
    } else {
        format!("{numerator}/2")
    }
}

pub fn parse_half(text: &str) -> Option<usize> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, "2")) => n.parse::<usize>().ok().filter(|n| n % 2 == 1),
        Some(_) => None,
        None => text.parse::<usize>().ok().map(|n| 2 * n),
    }
}

/// Vertex, edge and tetrahedron weights for one `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct TvTable {
    pub r: usize,
    pub q0: Complex64,
    pub alpha: Complex64,
    /// Indexed by colour numerator.
    pub beta: Vec<Complex64>,
    pub gamma: HashMap<[u8; 6], Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    r: usize,
    q0: [f64; 2],
    alpha: [f64; 2],
    beta: BTreeMap<String, [f64; 2]>,
    gamma: BTreeMap<String, [f64; 2]>,
}

fn c64([re, im]: [f64; 2]) -> Complex64 {
    Complex64::new(re, im)
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl TvTable {
    /// All weights 1: the state sum counts admissible colourings.
    pub fn unit(r: usize) -> Self {
        assert!(r >= 3, "r must be at least 3");
        TvTable {
            r,
            q0: Complex64::from_polar(1.0, std::f64::consts::PI / r as f64),
            alpha: Complex64::one(),
            beta: vec![Complex64::one(); r - 1],
            gamma: admissible_sextuples(r)
                .into_iter()
                .map(|s| (s, Complex64::one()))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, AppError> {
        let raw: RawTable = serde_json::from_str(text).map_err(|e| AppError::Table(e.to_string()))?;
        let r = raw.r;
        if r < 3 {
            return Err(AppError::Table(format!("r = {r} is below 3")));
        }
        let mut beta = vec![None; r - 1];
        for (k, v) in &raw.beta {
            let c = parse_half(k)
                .filter(|&c| c <= r - 2)
                .ok_or_else(|| AppError::Table(format!("bad colour `{k}` in beta")))?;
            beta[c] = Some(c64(*v));
        }
        let beta = beta
            .into_iter()
            .enumerate()
            .map(|(c, b)| b.ok_or_else(|| AppError::Table(format!("beta missing colour {}", format_half(c)))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut gamma = HashMap::new();
        for (k, v) in &raw.gamma {
            let parts: Vec<usize> = k
                .split(',')
                .map(|p| parse_half(p).filter(|&c| c <= r - 2))
                .collect::<Option<Vec<_>>>()
                .filter(|p| p.len() == 6)
                .ok_or_else(|| AppError::Table(format!("bad gamma key `{k}`")))?;
            let key: [u8; 6] = std::array::from_fn(|i| parts[i] as u8);
            gamma.insert(key, c64(*v));
        }
        for s in admissible_sextuples(r) {
            if !gamma.contains_key(&s) {
                let key: Vec<String> = s.iter().map(|&c| format_half(c as usize)).collect();
                return Err(AppError::Table(format!(
                    "gamma missing admissible sextuple {}",
                    key.join(",")
                )));
            }
        }
        Ok(TvTable {
            r,
            q0: c64(raw.q0),
            alpha: c64(raw.alpha),
            beta,
            gamma,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawTable {
            r: self.r,
            q0: pair(self.q0),
            alpha: pair(self.alpha),
            beta: self
                .beta
                .iter()
                .enumerate()
                .map(|(c, b)| (format_half(c), pair(*b)))
                .collect(),
            gamma: self
                .gamma
                .iter()
                .map(|(s, g)| {
                    let key: Vec<String> = s.iter().map(|&c| format_half(c as usize)).collect();
                    (key.join(","), pair(*g))
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("table serialises")
    }
}

/// The shipped table for `r = 3`.
pub fn shipped_table_r3() -> TvTable {
    TvTable::from_json(include_str!("../../fixtures/tv_r3.json")).expect("shipped table is complete")
}

/// Weights in some ring.
struct Weights<'a, R> {
    r: usize,
    alpha: R,
    beta: &'a [R],
    gamma: &'a (dyn Fn(&[u8; 6]) -> R + Sync),
}

fn prepare(t: &Triangulation) -> Result<(), AppError> {
    require_dim(t, 3)?;
    require_closed(t)
}

fn alpha_power<R: Ring>(alpha: &R, n: usize) -> R {
    (0..n).fold(R::one(), |acc, _| acc * alpha.clone())
}

fn face_admissible(r: usize, colours: &[u8; 6]) -> bool {
    TET_FACES.iter().all(|f| {
        tv_admissible(
            r,
            colours[f[0]] as usize,
            colours[f[1]] as usize,
            colours[f[2]] as usize,
        )
    })
}

fn bruteforce<R: Ring + Send + Sync>(t: &Triangulation, sk: &Skeleton, w: &Weights<R>) -> R {
    let edges: Vec<[usize; 6]> = (0..t.size()).map(|s| tet_edges(sk, s)).collect();
    let edge_count = sk.faces(1).len();
    // triangles and tetrahedra are checked when their largest edge is coloured
    let mut faces_at: Vec<Vec<[usize; 3]>> = vec![Vec::new(); edge_count];
    let mut tets_at: Vec<Vec<usize>> = vec![Vec::new(); edge_count];
    for (s, es) in edges.iter().enumerate() {
        for f in TET_FACES {
            let tri = f.map(|i| es[i]);
            faces_at[*tri.iter().max().unwrap()].push(tri);
        }
        tets_at[*es.iter().max().unwrap()].push(s);
    }
    struct Search<'a, R> {
        w: &'a Weights<'a, R>,
        edges: &'a [[usize; 6]],
        faces_at: &'a [Vec<[usize; 3]>],
        tets_at: &'a [Vec<usize>],
        colour: Vec<u8>,
        prefix: &'a [u8],
    }
    impl<R: Ring> Search<'_, R> {
        fn go(&mut self, e: usize, acc: R) -> R {
            if e == self.colour.len() {
                return acc;
            }
            let choices = match self.prefix.get(e) {
                Some(&c) => c..c + 1,
                None => 0..self.w.r as u8 - 1,
            };
            let mut total = R::zero();
            for c in choices {
                self.colour[e] = c;
                let ok = self.faces_at[e].iter().all(|tri| {
                    let [a, b, d] = tri.map(|x| self.colour[x] as usize);
                    tv_admissible(self.w.r, a, b, d)
                });
                if !ok {
                    continue;
                }
                let mut v = acc.clone() * self.w.beta[c as usize].clone();
                for &s in &self.tets_at[e] {
                    let cs = self.edges[s].map(|x| self.colour[x]);
                    v = v * (self.w.gamma)(&cs);
                }
                total = total + self.go(e + 1, v);
            }
            total
        }
    }
    // workers take the colourings of the first two edges; partial sums are
    // added in prefix order so the result does not depend on scheduling
    let depth = edge_count.min(2);
    let n = w.r - 1;
    let prefixes: Vec<Vec<u8>> = (0..n.pow(depth as u32))
        .map(|code| {
            (0..depth)
                .map(|i| (code / n.pow((depth - 1 - i) as u32) % n) as u8)
                .collect()
        })
        .collect();
    let partial: Vec<R> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut s = Search {
                w,
                edges: &edges,
                faces_at: &faces_at,
                tets_at: &tets_at,
                colour: vec![0; edge_count],
                prefix,
            };
            s.go(0, R::one())
        })
        .collect();
    partial.into_iter().fold(R::zero(), |acc, x| acc + x) * alpha_power(&w.alpha, sk.faces(0).len())
}

fn dynamic<R: Ring>(t: &Triangulation, sk: &Skeleton, td: &TreeDecomposition, w: &Weights<R>) -> R {
    let vertex_factor = alpha_power(&w.alpha, sk.faces(0).len());
    if t.size() == 0 {
        return vertex_factor;
    }
    let edges: Vec<[usize; 6]> = (0..t.size()).map(|s| tet_edges(sk, s)).collect();
    let colours = w.r as u8 - 1;
    let mut stack: Vec<(Layout, HashMap<Vec<u8>, R>)> = Vec::new();
    for op in nice_schedule(td, 0) {
        match op {
            NiceOp::Leaf => {
                let mut table = HashMap::new();
                table.insert(Vec::new(), R::one());
                stack.push((Layout::default(), table));
            }
            NiceOp::Introduce(tet) => {
                let (layout, table) = stack.pop().unwrap();
                let next = layout.with(tet, &edges);
                let map = layout.map_into(&next);
                let fresh: Vec<usize> = next
                    .edges
                    .iter()
                    .filter(|e| layout.edge_slot(**e).is_none())
                    .map(|&e| next.edge_slot(e).unwrap())
                    .collect();
                let slots = edges[tet].map(|e| next.edge_slot(e).unwrap());
                let mut out = HashMap::new();
                for (key, value) in table {
                    let mut k = relayout(&key, &map, next.width(), 0);
                    let combos = (colours as usize).pow(fresh.len() as u32);
                    for code in 0..combos {
                        let mut c = code;
                        for &s in &fresh {
                            k[s] = (c % colours as usize) as u8;
                            c /= colours as usize;
                        }
                        if face_admissible(w.r, &slots.map(|s| k[s])) {
                            out.insert(k.clone(), value.clone());
                        }
                    }
                }
                stack.push((next, out));
            }
            NiceOp::Forget(tet) => {
                let (layout, table) = stack.pop().unwrap();
                let next = layout.without(tet, &edges);
                let map = layout.map_into(&next);
                let slots = edges[tet].map(|e| layout.edge_slot(e).unwrap());
                let leaving: Vec<usize> = layout
                    .edges
                    .iter()
                    .filter(|e| next.edge_slot(**e).is_none())
                    .map(|&e| layout.edge_slot(e).unwrap())
                    .collect();
                let mut out: HashMap<Vec<u8>, R> = HashMap::new();
                for (key, value) in table {
                    let mut v = value * (w.gamma)(&slots.map(|s| key[s]));
                    for &s in &leaving {
                        v = v * w.beta[key[s] as usize].clone();
                    }
                    accumulate(&mut out, relayout(&key, &map, next.width(), 0), v, |a, b| {
                        *a = a.clone() + b
                    });
                }
                stack.push((next, out));
            }
            NiceOp::Join => {
                let (layout, b) = stack.pop().unwrap();
                let (_, a) = stack.pop().unwrap();
                let out = a
                    .into_iter()
                    .filter_map(|(k, va)| b.get(&k).map(|vb| (k, va * vb.clone())))
                    .collect();
                stack.push((layout, out));
            }
        }
    }
    let (_, table) = stack.pop().expect("schedule leaves one state");
    table.get(&Vec::new()).cloned().unwrap_or_else(R::zero) * vertex_factor
}

fn complex_weights(table: &TvTable) -> (Vec<Complex64>, impl Fn(&[u8; 6]) -> Complex64 + '_) {
    (table.beta.clone(), move |s: &[u8; 6]| {
        table.gamma.get(s).copied().unwrap_or_else(Complex64::zero)
    })
}

/// State sum over all colourings.
pub fn tv_bruteforce(t: &Triangulation, sk: &Skeleton, table: &TvTable) -> Result<Complex64, AppError> {
    prepare(t)?;
    let (beta, gamma) = complex_weights(table);
    Ok(bruteforce(
        t,
        sk,
        &Weights {
            r: table.r,
            alpha: table.alpha,
            beta: &beta,
            gamma: &gamma,
        },
    ))
}

/// State sum by dynamic programming over a tree decomposition of the dual
/// graph. A state colours the edges of the bag tetrahedra; a tetrahedron's
/// weight is applied when it is forgotten, an edge's weight when it leaves
/// the bag's edge set, and the vertex weights once at the end.
pub fn tv_dp(t: &Triangulation, sk: &Skeleton, table: &TvTable, td: &TreeDecomposition) -> Result<Complex64, AppError> {
    prepare(t)?;
    if t.size() > 0 {
        check_decomposition(t, td)?;
    }
    let (beta, gamma) = complex_weights(table);
    Ok(dynamic(
        t,
        sk,
        td,
        &Weights {
            r: table.r,
            alpha: table.alpha,
            beta: &beta,
            gamma: &gamma,
        },
    ))
}

fn unit_gamma(r: usize) -> impl Fn(&[u8; 6]) -> u128 {
    move |s: &[u8; 6]| u128::from(face_admissible(r, s))
}

/// Number of admissible colourings, exactly.
pub fn tv_count_bruteforce(t: &Triangulation, sk: &Skeleton, r: usize) -> Result<u128, AppError> {
    prepare(t)?;
    let beta = vec![1u128; r - 1];
    let gamma = unit_gamma(r);
    Ok(bruteforce(
        t,
        sk,
        &Weights {
            r,
            alpha: 1u128,
            beta: &beta,
            gamma: &gamma,
        },
    ))
}

pub fn tv_count_dp(t: &Triangulation, sk: &Skeleton, r: usize, td: &TreeDecomposition) -> Result<u128, AppError> {
    prepare(t)?;
    if t.size() > 0 {
        check_decomposition(t, td)?;
    }
    let beta = vec![1u128; r - 1];
    let gamma = unit_gamma(r);
    Ok(dynamic(
        t,
        sk,
        td,
        &Weights {
            r,
            alpha: 1u128,
            beta: &beta,
            gamma: &gamma,
        },
    ))
}

fn sextuple_name(s: &[u8; 6]) -> String {
    format!("S_{}", s.iter().map(|c| c.to_string()).collect::<String>())
}

fn exactly_one(x: &str, sets: &[String]) -> Formula {
    let mut parts = vec![or(sets.iter().map(|s| member(x, s)).collect())];
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            parts.push(not(and(vec![member(x, a), member(x, b)])));
        }
    }
    and(parts)
}

/// Multiplicative evaluation problem whose value is the state sum.
///
/// Free sets: `E_c` (edges of colour `c`), `S_σ` (tetrahedra coloured by
/// the admissible sextuple `σ`) and `V` (all vertices), weighted by `β_c`,
/// `γ_σ` and `α`.
pub fn tv_problem(t: &Triangulation, sk: &Skeleton, table: &TvTable) -> Result<EvaluationProblem<Complex64>, AppError> {
    prepare(t)?;
    let r = table.r;
    let edge_sets: Vec<String> = (0..r - 1).map(|c| format!("E_{c}")).collect();
    let sextuples = admissible_sextuples(r);
    let tet_sets: Vec<String> = sextuples.iter().map(sextuple_name).collect();
    let mut free = Vec::new();
    let mut weights = Vec::new();
    for (c, name) in edge_sets.iter().enumerate() {
        free.push((name.clone(), Sort::FaceSet(1)));
        weights.push(vec![table.beta[c]; sk.faces(1).len()]);
    }
    for (s, name) in sextuples.iter().zip(&tet_sets) {
        free.push((name.clone(), Sort::FaceSet(3)));
        weights.push(vec![table.gamma[s]; sk.faces(3).len()]);
    }
    free.push(("V".into(), Sort::FaceSet(0)));
    weights.push(vec![table.alpha; sk.faces(0).len()]);

    let mut clauses = vec![
        forall(Sort::Face(0), "v", member("v", "V")),
        forall(Sort::Face(1), "e", exactly_one("e", &edge_sets)),
        forall(Sort::Face(3), "s", exactly_one("s", &tet_sets)),
    ];
    let mut matches = Vec::new();
    for (s, name) in sextuples.iter().zip(&tet_sets) {
        for (slot, ends) in TET_EDGES.iter().enumerate() {
            matches.push(implies(
                and(vec![member("s", name), on_edge("e", "s", *ends)]),
                member("e", &edge_sets[s[slot] as usize]),
            ));
        }
    }
    clauses.push(forall(Sort::Face(3), "s", forall(Sort::Face(1), "e", and(matches))));
    Ok(EvaluationProblem {
        formula: and(clauses),
        free,
        mode: EvaluationMode::Multiplicative,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(tv_admissible(3, 0, 0, 0));
        assert!(!tv_admissible(3, 1, 0, 0));
        assert!(tv_admissible(3, 1, 1, 0));
        assert!(!tv_admissible(3, 1, 1, 1));
        assert_eq!(admissible_sextuples(3).len(), 8);
    }

    #[test]
    fn half_integers() {
        assert_eq!(parse_half("1/2"), Some(1));
        assert_eq!(parse_half("1"), Some(2));
        assert_eq!(parse_half("2/2"), None);
        assert_eq!(format_half(3), "3/2");
    }

    #[test]
    fn tables_load() {
        let t = shipped_table_r3();
        assert_eq!(t.r, 3);
        for r in 3..6 {
            let unit = TvTable::unit(r);
            assert_eq!(TvTable::from_json(&unit.to_json()).unwrap(), unit);
        }
        let broken = include_str!("../../fixtures/tv_r3.json").replace("\"1/2\": [", "\"7/2\": [");
        assert!(TvTable::from_json(&broken).is_err());
    }

    #[test]
    fn empty_triangulation_gives_one() {
        let t = Triangulation::new(3, 0).unwrap();
        let sk = crate::compute_skeleton(&t);
        let table = shipped_table_r3();
        assert_eq!(tv_bruteforce(&t, &sk, &table).unwrap(), Complex64::one());
        assert_eq!(
            tv_dp(&t, &sk, &table, &TreeDecomposition::single_bag(0)).unwrap(),
            Complex64::one()
        );
    }
}
