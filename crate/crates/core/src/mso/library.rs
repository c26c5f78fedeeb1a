//! Standard formulas.

use super::ast::{adj, and, eq, exists, forall, implies, member, not, or, sub, Declarations, Formula, Sort};
use crate::perm::{distinct_sequences, Perm};

fn both(a: Formula, b: Formula) -> Formula {
    and(vec![a, b])
}

/// Sentence: the simple graph is 3-colourable.
pub fn three_colourable() -> Formula {
    let sets = ["V1", "V2", "V3"];
    let pair = |x: &str, y: &str, s: &str| both(member(x, s), member(y, s));
    let cover = or(sets.iter().map(|s| member("v", s)).collect());
    let overlap = or(vec![
        both(member("v", "V1"), member("v", "V2")),
        both(member("v", "V2"), member("v", "V3")),
        both(member("v", "V1"), member("v", "V3")),
    ]);
    let clash = or(sets.iter().map(|s| pair("v", "w", s)).collect());
    let body = and(vec![cover, not(overlap), implies(adj("v", "w"), not(clash))]);
    let body = forall(Sort::Node, "v", forall(Sort::Node, "w", body));
    sets.iter().rev().fold(body, |f, s| exists(Sort::NodeSet, s, f))
}

/// Free `D`: every node is in `D` or adjacent to a node of `D`.
pub fn dominating_set() -> (Declarations, Formula) {
    let f = forall(
        Sort::Node,
        "v",
        or(vec![
            member("v", "D"),
            exists(Sort::Node, "w", both(member("w", "D"), adj("v", "w"))),
        ]),
    );
    (vec![("D".into(), Sort::NodeSet)], f)
}

/// Free `A`: no two nodes of `A` are adjacent.
pub fn independent_set() -> (Declarations, Formula) {
    let f = forall(
        Sort::Node,
        "u",
        forall(
            Sort::Node,
            "v",
            implies(both(member("u", "A"), member("v", "A")), not(adj("u", "v"))),
        ),
    );
    (vec![("A".into(), Sort::NodeSet)], f)
}

fn is_even(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for i in 0..p.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p.apply(j);
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// Sentence over 2-dimensional triangulations: triangles can be split into
/// `Sp` and `Sm` so that triangles meeting along an edge induce opposite
/// orientations on it.
pub fn orientable_surface() -> Formula {
    let partition = and(vec![
        or(vec![member("s", "Sp"), member("s", "Sm")]),
        not(both(member("s", "Sp"), member("s", "Sm"))),
    ]);
    let same = or(vec![
        both(member("u", "Sp"), member("v", "Sp")),
        both(member("u", "Sm"), member("v", "Sm")),
    ]);
    let opposite = or(vec![
        both(member("u", "Sp"), member("v", "Sm")),
        both(member("u", "Sm"), member("v", "Sp")),
    ]);
    let positions = distinct_sequences(2, 2);
    let mut clauses = vec![partition];
    for p in &positions {
        for q in &positions {
            // the vertex map from u to v fixing the shared edge
            let third = |s: &[usize]| 3 - s[0] - s[1];
            let mut images = [0usize; 3];
            images[p[0]] = q[0];
            images[p[1]] = q[1];
            images[third(p)] = third(q);
            let even = is_even(&Perm::from_images(&images).unwrap());
            let pu: Vec<u8> = p.iter().map(|&x| x as u8).collect();
            let qv: Vec<u8> = q.iter().map(|&x| x as u8).collect();
            let mut premise = vec![sub(&pu, "f", "u"), sub(&qv, "f", "v")];
            if p == q {
                premise.push(not(eq("u", "v")));
            }
            let conclusion = if even { opposite.clone() } else { same.clone() };
            clauses.push(implies(and(premise), conclusion));
        }
    }
    let body = forall(
        Sort::Face(2),
        "s",
        forall(
            Sort::Face(1),
            "f",
            forall(Sort::Face(2), "u", forall(Sort::Face(2), "v", and(clauses))),
        ),
    );
    exists(Sort::FaceSet(2), "Sp", exists(Sort::FaceSet(2), "Sm", body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::{check, Signature};

    #[test]
    fn well_sorted() {
        check(&three_colourable(), Signature::Graph { colours: 0 }, &vec![]).unwrap();
        let (d, f) = dominating_set();
        check(&f, Signature::Graph { colours: 0 }, &d).unwrap();
        check(&orientable_surface(), Signature::Tri { dim: 2 }, &vec![]).unwrap();
    }

    #[test]
    fn parity() {
        assert!(is_even(&Perm::identity(3)));
        assert!(!is_even(&Perm::transposition(3, 0, 2)));
        assert!(is_even(&Perm::from_images(&[1, 2, 0]).unwrap()));
    }
}
