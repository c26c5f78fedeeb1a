//! Discrete Morse matchings on the coloured Hasse diagram.
//!
//! A matching is a set of node-disjoint arcs avoiding the empty node such
//! that, between any two consecutive levels, orienting matched arcs upward
//! and the other arcs downward leaves no directed cycle.

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use super::AppError;
use crate::hasse::{ColouredHasseDiagram, HasseColour};
use crate::mso::{and, exists, forall, implies, member, not, or, sub, Declarations, ExtremumProblem, Formula, Sort};
use crate::perm::distinct_sequences;

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum MorseViolation {
    #[error("arc {0} does not exist")]
    NotAnArc(usize),
    #[error("arc {0} touches the empty node")]
    TouchesEmpty(usize),
    #[error("node {0} is matched twice")]
    SharedNode(usize),
    #[error("alternating cycle between levels {lower} and {}", lower + 1)]
    AlternatingCycle { lower: usize },
}

/// A Morse matching as a sorted list of Hasse arc indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseMatching {
    pub arcs: Vec<usize>,
}

/// Lower and upper node of an arc, or `None` for arcs to the empty node.
fn ends(h: &ColouredHasseDiagram, arc: usize) -> Option<(usize, usize)> {
    let a = &h.graph.arcs()[arc];
    match (h.level(a.u), h.level(a.v)) {
        (Some(x), Some(y)) if x < y => Some((a.u, a.v)),
        (Some(_), Some(_)) => Some((a.v, a.u)),
        _ => None,
    }
}

/// Number of faces left unmatched.
pub fn critical_count(h: &ColouredHasseDiagram, matching_size: usize) -> usize {
    h.node_count() - 1 - 2 * matching_size
}

struct Orientation<'a> {
    h: &'a ColouredHasseDiagram,
    /// Non-empty arcs at each node.
    incident: Vec<Vec<usize>>,
    in_matching: Vec<bool>,
    partner: Vec<Option<usize>>,
}

impl<'a> Orientation<'a> {
    fn new(h: &'a ColouredHasseDiagram) -> Self {
        let mut incident = vec![Vec::new(); h.node_count()];
        for arc in 0..h.graph.arcs().len() {
            if let Some((lo, hi)) = ends(h, arc) {
                incident[lo].push(arc);
                incident[hi].push(arc);
            }
        }
        Orientation {
            h,
            incident,
            in_matching: vec![false; h.graph.arcs().len()],
            partner: vec![None; h.node_count()],
        }
    }

    /// Successors of a node within the two levels `lower, lower+1`.
    fn successors(&self, node: usize, lower: usize) -> impl Iterator<Item = usize> + '_ {
        let level = self.h.level(node).unwrap();
        self.incident[node].iter().filter_map(move |&arc| {
            let (lo, hi) = ends(self.h, arc).unwrap();
            if self.h.level(lo) != Some(lower) {
                return None;
            }
            match (level == lower, self.in_matching[arc]) {
                (true, true) => Some(hi),
                (false, false) if hi == node => Some(lo),
                _ => None,
            }
        })
    }

    /// Whether `to` is reachable from `from` in the orientation of levels
    /// `lower, lower+1`.
    fn reaches(&self, from: usize, to: usize, lower: usize) -> bool {
        let mut seen = vec![false; self.h.node_count()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            for y in self.successors(x, lower) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn has_cycle(&self, lower: usize) -> bool {
        // three-colour depth-first search
        let n = self.h.node_count();
        let mut state = vec![0u8; n];
        for start in 0..n {
            if state[start] != 0 || !matches!(self.h.level(start), Some(l) if l == lower || l == lower + 1) {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, self.successors(start, lower).collect())];
            state[start] = 1;
            while let Some((node, succ)) = stack.last_mut() {
                match succ.pop() {
                    Some(y) if state[y] == 1 => return true,
                    Some(y) if state[y] == 0 => {
                        state[y] = 1;
                        let next = self.successors(y, lower).collect();
                        stack.push((y, next));
                    }
                    Some(_) => {}
                    None => {
                        state[*node] = 2;
                        stack.pop();
                    }
                }
            }
        }
        false
    }

    /// Adds a matched arc if it keeps the matching valid.
    fn try_add(&mut self, arc: usize) -> bool {
        let Some((lo, hi)) = ends(self.h, arc) else {
            return false;
        };
        if self.partner[lo].is_some() || self.partner[hi].is_some() {
            return false;
        }
        let lower = self.h.level(lo).unwrap();
        self.in_matching[arc] = true;
        // a new cycle must run through the flipped arc, from `hi` back to `lo`
        if self.reaches(hi, lo, lower) {
            self.in_matching[arc] = false;
            return false;
        }
        self.partner[lo] = Some(arc);
        self.partner[hi] = Some(arc);
        true
    }

    fn remove(&mut self, arc: usize) {
        let (lo, hi) = ends(self.h, arc).unwrap();
        self.in_matching[arc] = false;
        self.partner[lo] = None;
        self.partner[hi] = None;
    }
}

/// Checks the matching conditions.
pub fn morse_validate(h: &ColouredHasseDiagram, arcs: &[usize]) -> Result<(), MorseViolation> {
    let mut o = Orientation::new(h);
    for &arc in arcs {
        if arc >= h.graph.arcs().len() {
            return Err(MorseViolation::NotAnArc(arc));
        }
        let Some((lo, hi)) = ends(h, arc) else {
            return Err(MorseViolation::TouchesEmpty(arc));
        };
        for node in [lo, hi] {
            if o.partner[node].is_some() {
                return Err(MorseViolation::SharedNode(node));
            }
        }
        o.partner[lo] = Some(arc);
        o.partner[hi] = Some(arc);
        o.in_matching[arc] = true;
    }
    for lower in 0..h.dim() {
        if o.has_cycle(lower) {
            return Err(MorseViolation::AlternatingCycle { lower });
        }
    }
    Ok(())
}

/// Optimal matching by branch and bound over the arcs, in index order.
/// Returns the minimum number of critical faces and the first maximum
/// matching found.
pub fn morse_optimal(h: &ColouredHasseDiagram, budget: u64) -> Result<(usize, MorseMatching), AppError> {
    let arcs: Vec<usize> = (0..h.graph.arcs().len()).filter(|&a| ends(h, a).is_some()).collect();
    struct Search<'a> {
        o: Orientation<'a>,
        arcs: Vec<usize>,
        current: Vec<usize>,
        best: Vec<usize>,
        steps: u64,
        budget: u64,
        faces: usize,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize) -> Result<(), ()> {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(());
            }
            let free_nodes = self.faces - 2 * self.current.len();
            let bound = self.current.len() + (self.arcs.len() - i).min(free_nodes / 2);
            if bound <= self.best.len() {
                return Ok(());
            }
            if i == self.arcs.len() {
                self.best = self.current.clone();
                return Ok(());
            }
            let arc = self.arcs[i];
            if self.o.try_add(arc) {
                self.current.push(arc);
                self.go(i + 1)?;
                self.current.pop();
                self.o.remove(arc);
            }
            self.go(i + 1)
        }
    }
    let mut s = Search {
        o: Orientation::new(h),
        arcs,
        current: Vec::new(),
        best: Vec::new(),
        steps: 0,
        budget,
        faces: h.node_count() - 1,
    };
    // the empty matching is always valid
    s.go(0).map_err(|_| AppError::Budget { limit: budget })?;
    let size = s.best.len();
    Ok((critical_count(h, size), MorseMatching { arcs: s.best }))
}

/// Exhaustive oracle: every node-disjoint set of arcs is checked with
/// [`morse_validate`]; no acyclicity pruning. Ties go to the first set in
/// include-before-exclude order over arc indices.
pub fn morse_bruteforce(h: &ColouredHasseDiagram, budget: u64) -> Result<(usize, MorseMatching), AppError> {
    let arcs: Vec<(usize, usize, usize)> = (0..h.graph.arcs().len())
        .filter_map(|a| ends(h, a).map(|(lo, hi)| (a, lo, hi)))
        .collect();
    struct Search<'a> {
        h: &'a ColouredHasseDiagram,
        arcs: Vec<(usize, usize, usize)>,
        used: Vec<bool>,
        current: Vec<usize>,
        best: Vec<usize>,
        steps: u64,
        budget: u64,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize) -> Result<(), ()> {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(());
            }
            if i == self.arcs.len() {
                if self.current.len() > self.best.len() && morse_validate(self.h, &self.current).is_ok() {
                    self.best = self.current.clone();
                }
                return Ok(());
            }
            let (arc, lo, hi) = self.arcs[i];
            if !self.used[lo] && !self.used[hi] {
                self.used[lo] = true;
                self.used[hi] = true;
                self.current.push(arc);
                self.go(i + 1)?;
                self.current.pop();
                self.used[lo] = false;
                self.used[hi] = false;
            }
            self.go(i + 1)
        }
    }
    let mut s = Search {
        h,
        arcs,
        used: vec![false; h.node_count()],
        current: Vec::new(),
        best: Vec::new(),
        steps: 0,
        budget,
    };
    s.go(0).map_err(|_| AppError::Budget { limit: budget })?;
    let size = s.best.len();
    Ok((critical_count(h, size), MorseMatching { arcs: s.best }))
}

fn label(pi: &[usize]) -> String {
    pi.iter().map(|d| d.to_string()).collect()
}

fn w_name(i: usize, pi: &[usize]) -> String {
    format!("W{i}_{}", label(pi))
}

fn u8s(pi: &[usize]) -> Vec<u8> {
    pi.iter().map(|&x| x as u8).collect()
}

/// Colours of arcs from (i-1)-faces up to i-faces.
fn level_colours(i: usize) -> Vec<Vec<usize>> {
    distinct_sequences(i, i)
}

/// `v` (an i-face) is matched down, with some colour.
fn matched_down(i: usize, v: &str) -> Formula {
    or(level_colours(i).iter().map(|pi| member(v, &w_name(i, pi))).collect())
}

/// Some arc from `u` (an (i-1)-face) up to `v` (an i-face) has a colour
/// `π` with `v ∈ W_π` if `matched`, or `v ∉ W_π` otherwise.
fn arc_to(i: usize, u: &str, v: &str, matched: bool) -> Formula {
    or(level_colours(i)
        .iter()
        .map(|pi| {
            let m = member(v, &w_name(i, pi));
            and(vec![sub(&u8s(pi), u, v), if matched { m } else { not(m) }])
        })
        .collect())
}

/// Extremum problem for optimal Morse matchings of d-dimensional
/// triangulations.
///
/// Free sets: `V0..Vd`, forced to hold all faces of each dimension, and
/// `Wi_π` for `i = 1..d`: the i-faces matched to the (i-1)-face at labels
/// `π`. The objective is `Σ|Vi| - 2 Σ|Wi_π|`. Acyclicity between levels
/// `i-1` and `i` is stated as: no nonempty set `A` of (i-1)-faces and set
/// `B` of i-faces where each face of `A` is matched up into `B` and each
/// face of `B` has an unmatched arc down into `A`.
pub fn morse_problem(d: usize) -> ExtremumProblem {
    let mut free: Declarations = (0..=d).map(|i| (format!("V{i}"), Sort::FaceSet(i))).collect();
    let mut coefficients = vec![Rational64::from_integer(1); d + 1];
    let mut clauses = Vec::new();
    for i in 0..=d {
        clauses.push(forall(Sort::Face(i), "v", member("v", &format!("V{i}"))));
    }
    for i in 1..=d {
        let colours = level_colours(i);
        for pi in &colours {
            let w = w_name(i, pi);
            free.push((w.clone(), Sort::FaceSet(i)));
            coefficients.push(Rational64::from_integer(-2));
            // the matched arc exists
            clauses.push(forall(
                Sort::Face(i),
                "v",
                implies(member("v", &w), exists(Sort::Face(i - 1), "u", sub(&u8s(pi), "u", "v"))),
            ));
        }
        // at most one colour per matched face
        for (a, p) in colours.iter().enumerate() {
            for q in &colours[a + 1..] {
                clauses.push(forall(
                    Sort::Face(i),
                    "v",
                    not(and(vec![member("v", &w_name(i, p)), member("v", &w_name(i, q))])),
                ));
            }
        }
    }
    // a face matched down is not matched up, and is matched up at most once
    for i in 0..d {
        let up = |w: &str| arc_to(i + 1, "u", w, true);
        clauses.push(forall(
            Sort::Face(i),
            "u",
            and(vec![
                if i > 0 {
                    not(and(vec![matched_down(i, "u"), exists(Sort::Face(i + 1), "w", up("w"))]))
                } else {
                    Formula::True
                },
                not(exists(
                    Sort::Face(i + 1),
                    "w",
                    exists(
                        Sort::Face(i + 1),
                        "x",
                        and(vec![not(crate::mso::eq("w", "x")), up("w"), up("x")]),
                    ),
                )),
            ]),
        ));
    }
    // no alternating cycles
    for i in 1..=d {
        let body = and(vec![
            exists(Sort::Face(i - 1), "a", member("a", "A")),
            forall(
                Sort::Face(i - 1),
                "u",
                implies(
                    member("u", "A"),
                    exists(
                        Sort::Face(i),
                        "v",
                        and(vec![member("v", "B"), arc_to(i, "u", "v", true)]),
                    ),
                ),
            ),
            forall(
                Sort::Face(i),
                "v",
                implies(
                    member("v", "B"),
                    exists(
                        Sort::Face(i - 1),
                        "u",
                        and(vec![member("u", "A"), arc_to(i, "u", "v", false)]),
                    ),
                ),
            ),
        ]);
        clauses.push(not(exists(
            Sort::FaceSet(i - 1),
            "A",
            exists(Sort::FaceSet(i), "B", body),
        )));
    }
    ExtremumProblem {
        formula: and(clauses),
        free,
        coefficients,
        constant: Rational64::from_integer(0),
    }
}

/// Hasse arcs of a witness of [`morse_problem`].
pub fn matching_from_witness(
    h: &ColouredHasseDiagram,
    problem: &ExtremumProblem,
    witness: &[Vec<usize>],
) -> MorseMatching {
    let mut arcs = Vec::new();
    for ((name, sort), members) in problem.free.iter().zip(witness) {
        let Some(rest) = name.strip_prefix('W') else { continue };
        let Sort::FaceSet(i) = sort else { continue };
        let colour = HasseColour::Seq(rest.split_once('_').unwrap().1.bytes().map(|b| b - b'0').collect());
        for &v in members {
            let node = h.node_of_face(crate::triangulation::FaceRef { dim: *i, id: v });
            let arc = (0..h.graph.arcs().len())
                .find(|&a| ends(h, a).is_some_and(|(_, hi)| hi == node) && *h.arc_colour(a) == colour)
                .expect("witness arcs exist");
            arcs.push(arc);
        }
    }
    arcs.sort_unstable();
    MorseMatching { arcs }
}
