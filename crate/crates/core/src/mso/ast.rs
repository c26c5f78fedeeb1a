//! Formula syntax trees shared by the graph and triangulation signatures.

use std::collections::BTreeSet;
use std::fmt;

/// Variable sorts. `Face(i)` ranges over i-faces of a triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Node,
    Arc,
    NodeSet,
    ArcSet,
    Face(usize),
    FaceSet(usize),
}

impl Sort {
    pub fn is_set(self) -> bool {
        matches!(self, Sort::NodeSet | Sort::ArcSet | Sort::FaceSet(_))
    }

    /// Element sort of a set sort; element sorts map to themselves.
    pub fn element(self) -> Sort {
        match self {
            Sort::NodeSet => Sort::Node,
            Sort::ArcSet => Sort::Arc,
            Sort::FaceSet(i) => Sort::Face(i),
            s => s,
        }
    }

    pub fn set_of(self) -> Sort {
        match self {
            Sort::Node => Sort::NodeSet,
            Sort::Arc => Sort::ArcSet,
            Sort::Face(i) => Sort::FaceSet(i),
            s => s,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Node => f.write_str("node"),
            Sort::Arc => f.write_str("arc"),
            Sort::NodeSet => f.write_str("nodeset"),
            Sort::ArcSet => f.write_str("arcset"),
            Sort::Face(i) => write!(f, "face {i}"),
            Sort::FaceSet(i) => write!(f, "faceset {i}"),
        }
    }
}

/// Vocabulary a formula is written over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signature {
    /// Graphs with `colours` arc colours (0 for simple graphs).
    Graph { colours: usize },
    /// Triangulations of dimension `dim`.
    Tri { dim: usize },
}

/// Free variable declarations, in order.
pub type Declarations = Vec<(String, Sort)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Sort, String, Box<Formula>),
    Exists(Sort, String, Box<Formula>),
    Eq(String, String),
    In(String, String),
    /// Arc `e` is incident with node `v`.
    Inc(String, String),
    Adj(String, String),
    /// Arc has colour `i` (1-based).
    Col(usize, String),
    /// Nodes joined by an arc of colour `i` (1-based).
    Adjc(usize, String, String),
    /// Vertices `0..` of face `f` sit at vertices `pi` of face `s`.
    Sub(Vec<u8>, String, String),
}

pub fn and(parts: Vec<Formula>) -> Formula {
    Formula::And(parts)
}

pub fn or(parts: Vec<Formula>) -> Formula {
    Formula::Or(parts)
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn exists(sort: Sort, var: &str, body: Formula) -> Formula {
    Formula::Exists(sort, var.to_string(), Box::new(body))
}

pub fn forall(sort: Sort, var: &str, body: Formula) -> Formula {
    Formula::Forall(sort, var.to_string(), Box::new(body))
}

pub fn eq(a: &str, b: &str) -> Formula {
    Formula::Eq(a.into(), b.into())
}

pub fn member(x: &str, set: &str) -> Formula {
    Formula::In(x.into(), set.into())
}

pub fn inc(e: &str, v: &str) -> Formula {
    Formula::Inc(e.into(), v.into())
}

pub fn adj(u: &str, v: &str) -> Formula {
    Formula::Adj(u.into(), v.into())
}

pub fn col(i: usize, e: &str) -> Formula {
    Formula::Col(i, e.into())
}

pub fn adjc(i: usize, u: &str, v: &str) -> Formula {
    Formula::Adjc(i, u.into(), v.into())
}

pub fn sub(pi: &[u8], f: &str, s: &str) -> Formula {
    Formula::Sub(pi.to_vec(), f.into(), s.into())
}

impl Formula {
    /// Free variables, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            let use_var = |v: &String, bound: &Vec<String>, out: &mut Vec<String>| {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            };
            match f {
                Formula::True | Formula::False => {}
                Formula::And(ps) | Formula::Or(ps) => ps.iter().for_each(|p| walk(p, bound, out)),
                Formula::Not(p) => walk(p, bound, out),
                Formula::Implies(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Forall(_, v, body) | Formula::Exists(_, v, body) => {
                    bound.push(v.clone());
                    walk(body, bound, out);
                    bound.pop();
                }
                Formula::Eq(a, b) | Formula::In(a, b) | Formula::Inc(a, b) | Formula::Adj(a, b) => {
                    use_var(a, bound, out);
                    use_var(b, bound, out);
                }
                Formula::Adjc(_, a, b) | Formula::Sub(_, a, b) => {
                    use_var(a, bound, out);
                    use_var(b, bound, out);
                }
                Formula::Col(_, e) => use_var(e, bound, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Forall(_, v, _) | Formula::Exists(_, v, _) => {
                out.insert(v.clone());
            }
            Formula::Eq(a, b)
            | Formula::In(a, b)
            | Formula::Inc(a, b)
            | Formula::Adj(a, b)
            | Formula::Adjc(_, a, b)
            | Formula::Sub(_, a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Col(_, e) => {
                out.insert(e.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::And(ps) | Formula::Or(ps) => ps.iter().for_each(|p| p.visit(f)),
            Formula::Not(p) | Formula::Forall(_, _, p) | Formula::Exists(_, _, p) => p.visit(f),
            Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Renames every occurrence (bound and free) of a variable.
    pub fn rename(&self, from: &str, to: &str) -> Formula {
        let r = |v: &String| if v == from { to.to_string() } else { v.clone() };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::And(ps) => Formula::And(ps.iter().map(|p| p.rename(from, to)).collect()),
            Formula::Or(ps) => Formula::Or(ps.iter().map(|p| p.rename(from, to)).collect()),
            Formula::Not(p) => not(p.rename(from, to)),
            Formula::Implies(a, b) => implies(a.rename(from, to), b.rename(from, to)),
            Formula::Forall(s, v, b) => Formula::Forall(*s, r(v), Box::new(b.rename(from, to))),
            Formula::Exists(s, v, b) => Formula::Exists(*s, r(v), Box::new(b.rename(from, to))),
            Formula::Eq(a, b) => Formula::Eq(r(a), r(b)),
            Formula::In(a, b) => Formula::In(r(a), r(b)),
            Formula::Inc(a, b) => Formula::Inc(r(a), r(b)),
            Formula::Adj(a, b) => Formula::Adj(r(a), r(b)),
            Formula::Col(i, e) => Formula::Col(*i, r(e)),
            Formula::Adjc(i, a, b) => Formula::Adjc(*i, r(a), r(b)),
            Formula::Sub(pi, a, b) => Formula::Sub(pi.clone(), r(a), r(b)),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, head: &str, parts: &[Formula]) -> fmt::Result {
    write!(f, "({head}")?;
    for p in parts {
        write!(f, " {p}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::And(ps) => write_list(f, "and", ps),
            Formula::Or(ps) => write_list(f, "or", ps),
            Formula::Not(p) => write!(f, "(not {p})"),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Forall(s, v, b) => write!(f, "(forall {s} {v} {b})"),
            Formula::Exists(s, v, b) => write!(f, "(exists {s} {v} {b})"),
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::In(a, b) => write!(f, "(in {a} {b})"),
            Formula::Inc(a, b) => write!(f, "(inc {a} {b})"),
            Formula::Adj(a, b) => write!(f, "(adj {a} {b})"),
            Formula::Col(i, e) => write!(f, "(col {i} {e})"),
            Formula::Adjc(i, a, b) => write!(f, "(adjc {i} {a} {b})"),
            Formula::Sub(pi, a, b) => {
                f.write_str("(sub ")?;
                for d in pi {
                    write!(f, "{d}")?;
                }
                write!(f, " {a} {b})")
            }
        }
    }
}
