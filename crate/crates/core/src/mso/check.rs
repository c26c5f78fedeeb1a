//! Sort checking.

use std::collections::HashMap;

use super::ast::{Declarations, Formula, Signature, Sort};
use super::MsoError;

fn sort_err(atom: &Formula, message: impl Into<String>) -> MsoError {
    MsoError::Sort {
        atom: atom.to_string(),
        message: message.into(),
    }
}

fn sort_allowed(sort: Sort, sig: Signature) -> bool {
    match (sig, sort) {
        (Signature::Graph { .. }, Sort::Node | Sort::Arc | Sort::NodeSet | Sort::ArcSet) => true,
        (Signature::Tri { dim }, Sort::Face(i) | Sort::FaceSet(i)) => i <= dim,
        _ => false,
    }
}

/// Checks that every variable is declared and every atom is well sorted.
pub fn check(f: &Formula, sig: Signature, free: &Declarations) -> Result<(), MsoError> {
    let mut scope: HashMap<String, Vec<Sort>> = HashMap::new();
    for (name, sort) in free {
        if !sort_allowed(*sort, sig) {
            return Err(MsoError::Sort {
                atom: name.clone(),
                message: format!("sort `{sort}` not in this signature"),
            });
        }
        scope.entry(name.clone()).or_default().push(*sort);
    }
    walk(f, sig, &mut scope)
}

fn walk(f: &Formula, sig: Signature, scope: &mut HashMap<String, Vec<Sort>>) -> Result<(), MsoError> {
    let lookup = |v: &String, scope: &HashMap<String, Vec<Sort>>| -> Result<Sort, MsoError> {
        scope
            .get(v)
            .and_then(|s| s.last().copied())
            .ok_or_else(|| sort_err(f, format!("undeclared variable `{v}`")))
    };
    let expect = |v: &String, want: Sort, scope: &HashMap<String, Vec<Sort>>| -> Result<(), MsoError> {
        let got = lookup(v, scope)?;
        if got != want {
            return Err(sort_err(f, format!("`{v}` has sort {got}, expected {want}")));
        }
        Ok(())
    };
    let colours = match sig {
        Signature::Graph { colours } => Some(colours),
        Signature::Tri { .. } => None,
    };
    let need_graph =
        || -> Result<usize, MsoError> { colours.ok_or_else(|| sort_err(f, "graph atom in a triangulation formula")) };
    match f {
        Formula::True | Formula::False => Ok(()),
        Formula::And(ps) | Formula::Or(ps) => ps.iter().try_for_each(|p| walk(p, sig, scope)),
        Formula::Not(p) => walk(p, sig, scope),
        Formula::Implies(a, b) => {
            walk(a, sig, scope)?;
            walk(b, sig, scope)
        }
        Formula::Forall(sort, v, body) | Formula::Exists(sort, v, body) => {
            if !sort_allowed(*sort, sig) {
                return Err(sort_err(f, format!("sort `{sort}` not in this signature")));
            }
            scope.entry(v.clone()).or_default().push(*sort);
            let r = walk(body, sig, scope);
            scope.get_mut(v).unwrap().pop();
            r
        }
        Formula::Eq(a, b) => {
            let (sa, sb) = (lookup(a, scope)?, lookup(b, scope)?);
            if sa != sb {
                return Err(sort_err(f, format!("cannot compare {sa} with {sb}")));
            }
            Ok(())
        }
        Formula::In(x, set) => {
            let ss = lookup(set, scope)?;
            if !ss.is_set() {
                return Err(sort_err(f, format!("`{set}` has sort {ss}, expected a set")));
            }
            expect(x, ss.element(), scope)
        }
        Formula::Inc(e, v) => {
            need_graph()?;
            expect(e, Sort::Arc, scope)?;
            expect(v, Sort::Node, scope)
        }
        Formula::Adj(u, v) => {
            need_graph()?;
            expect(u, Sort::Node, scope)?;
            expect(v, Sort::Node, scope)
        }
        Formula::Col(i, e) => {
            let k = need_graph()?;
            if *i == 0 || *i > k {
                return Err(sort_err(f, format!("colour {i} outside 1..={k}")));
            }
            expect(e, Sort::Arc, scope)
        }
        Formula::Adjc(i, u, v) => {
            let k = need_graph()?;
            if *i == 0 || *i > k {
                return Err(sort_err(f, format!("colour {i} outside 1..={k}")));
            }
            expect(u, Sort::Node, scope)?;
            expect(v, Sort::Node, scope)
        }
        Formula::Sub(pi, a, s) => {
            if colours.is_some() {
                return Err(sort_err(f, "subface atom in a graph formula"));
            }
            let (Sort::Face(i), Sort::Face(j)) = (lookup(a, scope)?, lookup(s, scope)?) else {
                return Err(sort_err(f, "subface atom needs two face variables"));
            };
            if i >= j {
                return Err(sort_err(f, format!("face dimension {i} is not below {j}")));
            }
            if pi.len() != i + 1 {
                return Err(sort_err(f, format!("label sequence needs {} entries", i + 1)));
            }
            let mut seen = vec![false; j + 1];
            for &p in pi {
                let p = p as usize;
                if p > j || seen[p] {
                    return Err(sort_err(f, format!("labels must be distinct and at most {j}")));
                }
                seen[p] = true;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::parse::parse_syntax;

    fn checks(text: &str, sig: Signature, free: &[(&str, Sort)]) -> Result<(), MsoError> {
        let free: Declarations = free.iter().map(|(n, s)| (n.to_string(), *s)).collect();
        check(&parse_syntax(text).unwrap(), sig, &free)
    }

    #[test]
    fn undeclared_variable() {
        let err = checks("(in v V)", Signature::Graph { colours: 0 }, &[("V", Sort::NodeSet)]).unwrap_err();
        assert!(matches!(err, MsoError::Sort { ref atom, .. } if atom == "(in v V)"));
    }

    #[test]
    fn sorts_enforced() {
        let g = Signature::Graph { colours: 2 };
        assert!(checks("(forall arc e (forall node v (inc e v)))", g, &[]).is_ok());
        assert!(checks("(forall node e (forall node v (inc e v)))", g, &[]).is_err());
        assert!(checks("(forall arc e (col 3 e))", g, &[]).is_err());
        assert!(checks("(forall face 1 f true)", g, &[]).is_err());
        let t = Signature::Tri { dim: 2 };
        assert!(checks("(forall face 1 f (forall face 2 s (sub 12 f s)))", t, &[]).is_ok());
        assert!(checks("(forall face 1 f (forall face 2 s (sub 13 f s)))", t, &[]).is_err());
        assert!(checks("(forall face 1 f (forall face 2 s (sub 1 f s)))", t, &[]).is_err());
        assert!(checks("(forall face 3 f true)", t, &[]).is_err());
        assert!(checks("(forall node v (adj v v))", t, &[]).is_err());
    }

    #[test]
    fn shadowing() {
        let g = Signature::Graph { colours: 0 };
        assert!(checks("(forall arc x (exists node x (adj x x)))", g, &[]).is_ok());
    }
}
