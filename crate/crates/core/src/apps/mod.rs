//! Problems on triangulations: taut angle structures, optimal discrete
//! Morse matchings and Turaev-Viro invariants. Each comes with an
//! exhaustive solver and an MSO formulation; taut and Turaev-Viro also have
//! dynamic programs over tree decompositions of the dual graph.

mod dp;
pub mod morse;
pub mod taut;
pub mod tv;

use thiserror::Error;

use crate::mso::{or, sub, Formula, MsoError};
use crate::tdecomp::TreeDecomposition;
use crate::tdecomp::Violation;
use crate::triangulation::{dual_graph, Skeleton, Triangulation};

/// Edge positions of a tetrahedron in the order `01, 02, 12, 23, 13, 03`.
pub const TET_EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [1, 2], [2, 3], [1, 3], [0, 3]];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AppError {
    #[error("expected a {expected}-dimensional triangulation, found dimension {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("triangulation has {0} unglued facets")]
    NotClosed(usize),
    #[error("tree decomposition does not fit the dual graph: {0}")]
    Decomposition(#[from] Violation),
    #[error("search budget of {limit} steps exceeded")]
    Budget { limit: u64 },
    #[error("constant table: {0}")]
    Table(String),
    #[error(transparent)]
    Mso(#[from] MsoError),
}

fn require_dim(t: &Triangulation, d: usize) -> Result<(), AppError> {
    if t.dim() != d {
        return Err(AppError::WrongDimension {
            expected: d,
            found: t.dim(),
        });
    }
    Ok(())
}

fn require_closed(t: &Triangulation) -> Result<(), AppError> {
    match t.boundary_facets().len() {
        0 => Ok(()),
        n => Err(AppError::NotClosed(n)),
    }
}

/// Edge ids of a tetrahedron in [`TET_EDGES`] order.
pub fn tet_edges(sk: &Skeleton, tet: usize) -> [usize; 6] {
    TET_EDGES.map(|[a, b]| sk.face_at_mask(tet, (1 << a) | (1 << b)).id)
}

fn check_decomposition(t: &Triangulation, td: &TreeDecomposition) -> Result<(), AppError> {
    td.validate(&dual_graph(t))?;
    Ok(())
}

/// Edge `f` sits on vertices `{a, b}` of tetrahedron `s`, in either order.
pub(crate) fn on_edge(f: &str, s: &str, [a, b]: [usize; 2]) -> Formula {
    let ab = [a as u8, b as u8];
    let ba = [b as u8, a as u8];
    or(vec![sub(&ab, f, s), sub(&ba, f, s)])
}
