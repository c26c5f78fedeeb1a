//! Small triangulations shipped with the crate.

use crate::triangulation::Triangulation;

pub const KLEIN_BOTTLE: &str = include_str!("../fixtures/klein.tri");
pub const SOLID_TORUS: &str = include_str!("../fixtures/solid_torus.tri");
pub const TRIANGLE: &str = include_str!("../fixtures/triangle.tri");
pub const SPHERE_2: &str = include_str!("../fixtures/sphere2.tri");
pub const S3_TWO_TET: &str = include_str!("../fixtures/s3_two_tet.tri");
pub const ONE_TET_CLOSED: &str = include_str!("../fixtures/one_tet_closed.tri");

fn load(text: &str) -> Triangulation {
    Triangulation::parse(text).expect("shipped fixture parses")
}

/// Two triangles, three gluings, one vertex.
pub fn klein_bottle() -> Triangulation {
    load(KLEIN_BOTTLE)
}

/// One tetrahedron with facet 012 glued to facet 123.
pub fn solid_torus() -> Triangulation {
    load(SOLID_TORUS)
}

pub fn triangle() -> Triangulation {
    load(TRIANGLE)
}

/// Two triangles glued along their boundary by the identity.
pub fn sphere_2() -> Triangulation {
    load(SPHERE_2)
}

/// Two tetrahedra glued along their boundary by the identity.
pub fn s3_two_tet() -> Triangulation {
    load(S3_TWO_TET)
}

/// A closed triangulation with a single tetrahedron.
pub fn one_tet_closed() -> Triangulation {
    load(ONE_TET_CLOSED)
}
