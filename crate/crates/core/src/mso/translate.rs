//! Formula translations: coloured graphs to simple graphs through
//! [`encode_simple`](crate::graphs::encode_simple), and triangulations to
//! their coloured Hasse diagrams.

use std::collections::BTreeSet;

use super::ast::{adj, adjc, and, exists, forall, implies, member, not, or, Declarations, Formula, Signature, Sort};
use super::check::check;
use super::MsoError;
use crate::hasse::{colour_index, hasse_colours, HasseColour};

/// Supplies variable names unused by the formula being translated.
struct Fresh {
    used: BTreeSet<String>,
    next: usize,
}

impl Fresh {
    fn new(used: BTreeSet<String>) -> Self {
        Fresh { used, next: 0 }
    }

    fn name(&mut self) -> String {
        loop {
            let candidate = format!("_h{}", self.next);
            self.next += 1;
            if self.used.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

fn conj(mut parts: Vec<Formula>) -> Formula {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        and(parts)
    }
}

fn disj(mut parts: Vec<Formula>) -> Formula {
    match parts.len() {
        0 => Formula::False,
        1 => parts.pop().unwrap(),
        _ => or(parts),
    }
}

/// Shared shape of both translations: rewrite sorts and atoms, and guard
/// every variable with a predicate on its new element sort.
trait Target {
    fn sort(&self, s: Sort) -> Sort;
    /// Guard on an element of the translated element sort.
    fn element_guard(&self, s: Sort, x: &str, fresh: &mut Fresh) -> Formula;
    fn atom(&self, f: &Formula, fresh: &mut Fresh) -> Formula;

    fn guard(&self, s: Sort, x: &str, fresh: &mut Fresh) -> Formula {
        if s.is_set() {
            let z = fresh.name();
            let body = self.element_guard(s.element(), &z, fresh);
            forall(self.sort(s.element()), &z, implies(member(&z, x), body))
        } else {
            self.element_guard(s, x, fresh)
        }
    }

    fn rewrite(&self, f: &Formula, fresh: &mut Fresh) -> Formula {
        match f {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::In(..) => f.clone(),
            Formula::And(ps) => and(ps.iter().map(|p| self.rewrite(p, fresh)).collect()),
            Formula::Or(ps) => or(ps.iter().map(|p| self.rewrite(p, fresh)).collect()),
            Formula::Not(p) => not(self.rewrite(p, fresh)),
            Formula::Implies(a, b) => implies(self.rewrite(a, fresh), self.rewrite(b, fresh)),
            Formula::Exists(s, v, body) => {
                let g = self.guard(*s, v, fresh);
                exists(self.sort(*s), v, and(vec![g, self.rewrite(body, fresh)]))
            }
            Formula::Forall(s, v, body) => {
                let g = self.guard(*s, v, fresh);
                forall(self.sort(*s), v, implies(g, self.rewrite(body, fresh)))
            }
            atom => self.atom(atom, fresh),
        }
    }

    fn translate(&self, f: &Formula, free: &Declarations) -> (Formula, Declarations) {
        let mut used = f.all_names();
        used.extend(free.iter().map(|(n, _)| n.clone()));
        let mut fresh = Fresh::new(used);
        let body = self.rewrite(f, &mut fresh);
        let decls = free.iter().map(|(n, s)| (n.clone(), self.sort(*s))).collect();
        if free.is_empty() {
            return (body, decls);
        }
        let mut parts: Vec<Formula> = free.iter().map(|(n, s)| self.guard(*s, n, &mut fresh)).collect();
        parts.push(body);
        (and(parts), decls)
    }
}

struct Coloured {
    colours: usize,
}

impl Coloured {
    /// `x` lies in a clique of `m` nodes. Adjacency tests are placed right
    /// after each new variable so the search prunes early.
    fn clique(x: &str, m: usize, fresh: &mut Fresh) -> Formula {
        let ys: Vec<String> = (1..m).map(|_| fresh.name()).collect();
        let mut body = Formula::True;
        for k in (0..ys.len()).rev() {
            let mut parts = vec![adj(x, &ys[k])];
            parts.extend(ys[..k].iter().map(|y| adj(y, &ys[k])));
            if k + 1 < ys.len() {
                parts.push(body);
            }
            body = exists(Sort::Node, &ys[k], conj(parts));
        }
        body
    }

    fn is_col(i: usize, x: &str, fresh: &mut Fresh) -> Formula {
        and(vec![Self::clique(x, i + 2, fresh), not(Self::clique(x, i + 3, fresh))])
    }

    fn is_arc(x: &str, fresh: &mut Fresh) -> Formula {
        let y = fresh.name();
        let touches = exists(Sort::Node, &y, and(vec![adj(x, &y), Self::clique(&y, 3, fresh)]));
        and(vec![not(Self::clique(x, 3, fresh)), touches])
    }

    fn is_node(&self, x: &str, fresh: &mut Fresh) -> Formula {
        let mut parts = vec![Self::is_arc(x, fresh)];
        parts.extend((1..=self.colours).map(|i| Self::is_col(i, x, fresh)));
        not(or(parts))
    }

    /// Some arc node joins `u` and `v`, with colour `colour` if given.
    fn shared_arc(u: &str, v: &str, colour: Option<usize>, fresh: &mut Fresh) -> Formula {
        let z = fresh.name();
        let mut parts = vec![
            Self::is_arc(&z, fresh),
            adj(&z, u),
            adj(&z, v),
            not(super::ast::eq(u, v)),
        ];
        if let Some(i) = colour {
            parts.push(Self::coloured(&z, i, fresh));
        }
        exists(Sort::Node, &z, and(parts))
    }

    fn coloured(e: &str, i: usize, fresh: &mut Fresh) -> Formula {
        let y = fresh.name();
        exists(Sort::Node, &y, and(vec![Self::is_col(i, &y, fresh), adj(e, &y)]))
    }
}

impl Target for Coloured {
    fn sort(&self, s: Sort) -> Sort {
        match s {
            Sort::Arc => Sort::Node,
            Sort::ArcSet => Sort::NodeSet,
            s => s,
        }
    }

    fn element_guard(&self, s: Sort, x: &str, fresh: &mut Fresh) -> Formula {
        match s {
            Sort::Arc => Self::is_arc(x, fresh),
            _ => self.is_node(x, fresh),
        }
    }

    fn atom(&self, f: &Formula, fresh: &mut Fresh) -> Formula {
        match f {
            Formula::Inc(e, v) => and(vec![Self::is_arc(e, fresh), self.is_node(v, fresh), adj(e, v)]),
            Formula::Adj(u, v) => Self::shared_arc(u, v, None, fresh),
            Formula::Col(i, e) => Self::coloured(e, *i, fresh),
            Formula::Adjc(i, u, v) => Self::shared_arc(u, v, Some(*i), fresh),
            other => other.clone(),
        }
    }
}

/// Rewrites a formula over edge-coloured graphs with `colours ≥ 1` colours
/// into one over simple graphs, such that `G ⊨ φ` iff `encode_simple(G) ⊨ φ̄`
/// and free-variable solutions correspond through the encoding's origin map.
pub fn translate_coloured(
    formula: &Formula,
    colours: usize,
    free: &Declarations,
) -> Result<(Formula, Declarations), MsoError> {
    if colours == 0 {
        return Err(MsoError::Translation("the encoding needs at least one colour".into()));
    }
    check(formula, Signature::Graph { colours }, free)?;
    Ok(Coloured { colours }.translate(formula, free))
}

struct Hasse {
    dim: usize,
    colours: Vec<HasseColour>,
}

impl Hasse {
    fn index(&self, c: &HasseColour) -> usize {
        colour_index(self.dim, c).expect("colour of this dimension") + 1
    }

    /// `x` meets an arc whose colour has length `len` (0 = the empty colour).
    fn has_len(&self, x: &str, len: usize, fresh: &mut Fresh) -> Formula {
        let y = fresh.name();
        let parts = self
            .colours
            .iter()
            .filter(|c| c.len() == len)
            .map(|c| adjc(self.index(c), x, &y))
            .collect();
        exists(Sort::Node, &y, disj(parts))
    }

    fn is_face(&self, i: usize, x: &str, fresh: &mut Fresh) -> Formula {
        if i == self.dim {
            and(vec![self.has_len(x, i, fresh), not(self.has_len(x, i - 1, fresh))])
        } else {
            and(vec![self.has_len(x, i, fresh), self.has_len(x, i + 1, fresh)])
        }
    }
}

impl Target for Hasse {
    fn sort(&self, s: Sort) -> Sort {
        match s {
            Sort::Face(_) => Sort::Node,
            Sort::FaceSet(_) => Sort::NodeSet,
            s => s,
        }
    }

    fn element_guard(&self, s: Sort, x: &str, fresh: &mut Fresh) -> Formula {
        match s {
            Sort::Face(i) => self.is_face(i, x, fresh),
            _ => unreachable!("triangulation formulas use face sorts"),
        }
    }

    // subface atoms need the scope and are rewritten in `rewrite_tri`
    fn atom(&self, f: &Formula, _fresh: &mut Fresh) -> Formula {
        f.clone()
    }
}

fn chains(dim: usize, pi: &[u8], j: usize, f: &str, s: &str, fresh: &mut Fresh) -> Formula {
    let i = pi.len() - 1;
    let names: Vec<String> = (i + 1..j).map(|_| fresh.name()).collect();
    let mut ends = vec![f.to_string()];
    ends.extend(names.iter().cloned());
    ends.push(s.to_string());
    let disjuncts = chain_colours(pi, j)
        .into_iter()
        .map(|cs| {
            let steps = cs
                .iter()
                .enumerate()
                .map(|(k, c)| adjc(colour_index(dim, c).unwrap() + 1, &ends[k], &ends[k + 1]))
                .collect();
            names
                .iter()
                .rev()
                .fold(conj(steps), |body, g| exists(Sort::Node, g, body))
        })
        .collect();
    disj(disjuncts)
}

/// Colour sequences `(c_{i+1}, .., c_j)` of the chains used to express
/// `f ≤_π s` for an i-face `f` and j-face `s`.
///
/// The k-face on the chain spans the labels `S_k` of `s`, where `S_i` is the
/// image of `π` and each `S_{k+1}` adds the least unused label; every
/// bijection `σ_k : {0..k} → S_k` is tried, with `σ_i = π` and `σ_j` the
/// identity, and the step colour is `σ_k⁻¹ ∘ σ_{k-1}`.
pub fn chain_colours(pi: &[u8], j: usize) -> Vec<Vec<HasseColour>> {
    let i = pi.len() - 1;
    let mut sets: Vec<Vec<u8>> = vec![pi.to_vec()];
    for _ in i..j {
        let last = sets.last().unwrap();
        let next = (0..=j as u8).find(|x| !last.contains(x)).unwrap();
        let mut s = last.clone();
        s.push(next);
        sets.push(s);
    }
    // candidate σ_k for k = i..=j
    let options: Vec<Vec<Vec<u8>>> = (i..=j)
        .map(|k| {
            if k == i {
                vec![pi.to_vec()]
            } else if k == j {
                vec![(0..=j as u8).collect()]
            } else {
                let s = &sets[k - i];
                crate::perm::Perm::all(k + 1)
                    .into_iter()
                    .map(|p| p.images().map(|x| s[x]).collect())
                    .collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<&Vec<u8>> = Vec::new();
    fn rec<'a>(options: &'a [Vec<Vec<u8>>], current: &mut Vec<&'a Vec<u8>>, out: &mut Vec<Vec<HasseColour>>) {
        if current.len() == options.len() {
            let colours = current
                .windows(2)
                .map(|w| {
                    let (lower, upper) = (w[0], w[1]);
                    let seq = lower
                        .iter()
                        .map(|x| upper.iter().position(|y| y == x).unwrap() as u8)
                        .collect();
                    HasseColour::Seq(seq)
                })
                .collect();
            out.push(colours);
            return;
        }
        for o in &options[current.len()] {
            current.push(o);
            rec(options, current, out);
            current.pop();
        }
    }
    rec(&options, &mut current, &mut out);
    out
}

fn valid_pi(pi: &[u8], j: usize) -> bool {
    let mut seen = vec![false; j + 1];
    !pi.is_empty()
        && pi.len() <= j
        && pi.iter().all(|&x| {
            let ok = (x as usize) <= j && !seen[x as usize];
            if ok {
                seen[x as usize] = true;
            }
            ok
        })
}

/// The chain disjunction standing for `f ≤_π s` in the Hasse diagram, with
/// `f` an i-face (`i = |π| - 1`) and `s` a j-face of a d-dimensional
/// triangulation.
pub fn expand_subface_relation(pi: &[u8], j: usize, d: usize, f: &str, s: &str) -> Result<Formula, MsoError> {
    if !valid_pi(pi, j) || j > d {
        return Err(MsoError::Translation(format!(
            "invalid subface labels {:?} into a {j}-face of dimension {d}",
            pi
        )));
    }
    let mut used = BTreeSet::new();
    used.insert(f.to_string());
    used.insert(s.to_string());
    Ok(chains(d, pi, j, f, s, &mut Fresh::new(used)))
}

/// Rewrites a formula over d-dimensional triangulations into one over
/// coloured graphs with colours `hasse_colours(d)` (1-based in order), such
/// that `T ⊨ φ` iff the coloured Hasse diagram of `T` satisfies `φ̄`.
pub fn translate_triangulation(
    formula: &Formula,
    dim: usize,
    free: &Declarations,
) -> Result<(Formula, Declarations), MsoError> {
    check(formula, Signature::Tri { dim }, free)?;
    let target = Hasse {
        dim,
        colours: hasse_colours(dim),
    };
    let mut used = formula.all_names();
    used.extend(free.iter().map(|(n, _)| n.clone()));
    let mut fresh = Fresh::new(used);
    let mut scope: Vec<(String, usize)> = free
        .iter()
        .map(|(n, s)| match s {
            Sort::Face(i) | Sort::FaceSet(i) => (n.clone(), *i),
            _ => unreachable!("sort-checked formula"),
        })
        .collect();
    let body = rewrite_tri(&target, formula, &mut scope, &mut fresh);
    let decls: Declarations = free.iter().map(|(n, s)| (n.clone(), target.sort(*s))).collect();
    if free.is_empty() {
        return Ok((body, decls));
    }
    let mut parts: Vec<Formula> = free.iter().map(|(n, s)| target.guard(*s, n, &mut fresh)).collect();
    parts.push(body);
    Ok((and(parts), decls))
}

fn rewrite_tri(t: &Hasse, f: &Formula, scope: &mut Vec<(String, usize)>, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::And(ps) => and(ps.iter().map(|p| rewrite_tri(t, p, scope, fresh)).collect()),
        Formula::Or(ps) => or(ps.iter().map(|p| rewrite_tri(t, p, scope, fresh)).collect()),
        Formula::Not(p) => not(rewrite_tri(t, p, scope, fresh)),
        Formula::Implies(a, b) => implies(rewrite_tri(t, a, scope, fresh), rewrite_tri(t, b, scope, fresh)),
        Formula::Exists(s, v, body) | Formula::Forall(s, v, body) => {
            let (Sort::Face(i) | Sort::FaceSet(i)) = *s else {
                unreachable!("sort-checked formula")
            };
            let g = t.guard(*s, v, fresh);
            scope.push((v.clone(), i));
            let inner = rewrite_tri(t, body, scope, fresh);
            scope.pop();
            if matches!(f, Formula::Exists(..)) {
                exists(t.sort(*s), v, and(vec![g, inner]))
            } else {
                forall(t.sort(*s), v, implies(g, inner))
            }
        }
        Formula::Sub(pi, a, b) => {
            let j = scope
                .iter()
                .rev()
                .find(|(n, _)| n == b)
                .expect("sort-checked formula")
                .1;
            chains(t.dim, pi, j, a, b, fresh)
        }
        other => other.clone(),
    }
}
