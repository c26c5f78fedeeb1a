//! The (1, d+1) move: cone a simplex over a new interior vertex.

use super::{Triangulation, TriangulationError};
use crate::perm::Perm;

/// Replaces simplex `s` by `d+1` simplices sharing a new interior vertex.
///
/// Piece `j` is the cone over facet `j` of `s`; the new vertex sits at
/// position `j` and the other positions keep their labels. Piece 0 keeps
/// index `s`, pieces `1..=d` are appended in order.
pub fn subdivide_simplex(t: &Triangulation, s: usize) -> Result<Triangulation, TriangulationError> {
    let d = t.dim();
    let n = t.size();
    if s >= n {
        return Err(TriangulationError::SimplexOutOfRange { index: s, size: n });
    }
    let piece = |j: usize| if j == 0 { s } else { n + j - 1 };
    let relocate = |simplex: usize, facet: usize| {
        if simplex == s {
            (piece(facet), facet)
        } else {
            (simplex, facet)
        }
    };

    let mut out = Triangulation::new(d, n + d)?;
    for g in t.gluings() {
        let (a, fa) = relocate(g.simplex, g.facet);
        let (b, fb) = relocate(g.other, g.other_facet);
        out.glue(a, fa, b, fb, g.map)?;
    }
    for j in 0..=d {
        for k in j + 1..=d {
            out.glue(piece(j), k, piece(k), j, Perm::transposition(d + 1, j, k))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::triangulation::compute_skeleton;

    #[test]
    fn cone_over_triangle() {
        let t = subdivide_simplex(&Triangulation::new(2, 1).unwrap(), 0).unwrap();
        t.validate().unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(compute_skeleton(&t).f_vector(), vec![4, 6, 3]);
    }

    #[test]
    fn solid_torus_twice() {
        let t = subdivide_simplex(&fixtures::solid_torus(), 0).unwrap();
        t.validate().unwrap();
        assert_eq!(t.size(), 4);
        let t2 = subdivide_simplex(&t, 2).unwrap();
        assert_eq!(t2.size(), 7);
        let sk = compute_skeleton(&t2);
        // one extra vertex per move, Euler characteristic unchanged
        assert_eq!(sk.f_vector()[0], 3);
        assert_eq!(
            sk.euler_characteristic(),
            compute_skeleton(&fixtures::solid_torus()).euler_characteristic()
        );
    }

    #[test]
    fn out_of_range() {
        assert!(subdivide_simplex(&fixtures::klein_bottle(), 2).is_err());
    }
}
