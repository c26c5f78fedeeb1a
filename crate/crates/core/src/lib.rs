//! Triangulations, coloured Hasse diagrams, tree decompositions and monadic
//! second-order logic, with fixed-parameter algorithms for taut angle
//! structures, optimal Morse matchings and Turaev-Viro invariants.

pub mod apps;
pub mod fixtures;
pub mod generate;
pub mod graphs;
pub mod hasse;
pub mod mso;
pub mod perm;
pub mod tdecomp;
pub mod triangulation;

pub use apps::AppError;
pub use graphs::{EdgeColouredGraph, GraphError, SimpleGraph};
pub use hasse::{build_hasse, ColouredHasseDiagram, HasseColour};
pub use mso::MsoError;
pub use perm::Perm;
pub use tdecomp::{DecompositionError, TreeDecomposition};
pub use triangulation::{
    compute_skeleton, dual_graph, subdivide_simplex, Face, FaceRef, MultiGraph, Skeleton, Triangulation,
    TriangulationError,
};
