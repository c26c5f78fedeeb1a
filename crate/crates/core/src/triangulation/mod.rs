//! d-dimensional triangulations built from abstract simplices with facets
//! glued in pairs.
//!
//! Facet `f` of a simplex is the facet opposite vertex `f`. A gluing of
//! `(s1, f1)` to `(s2, f2)` carries a permutation `p` of `{0..d}` with
//! `p(f1) = f2`: vertex `v` of `s1` is identified with vertex `p(v)` of `s2`.

mod dual;
mod skeleton;
mod subdivide;
mod text;

pub use dual::{dual_graph, MultiGraph};
pub use skeleton::{compute_skeleton, Face, FaceRef, Skeleton};
pub use subdivide::subdivide_simplex;

use crate::perm::Perm;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("dimension must be at least 1")]
    BadDimension,
    #[error("simplex index {index} out of range (size {size})")]
    SimplexOutOfRange { index: usize, size: usize },
    #[error("facet label {facet} out of range for dimension {dim}")]
    FacetOutOfRange { facet: usize, dim: usize },
    #[error("facet glued to itself: simplex {simplex}, facet {facet}")]
    FacetGluedToItself { simplex: usize, facet: usize },
    #[error("facet slot already in use: simplex {simplex}, facet {facet}")]
    SlotInUse { simplex: usize, facet: usize },
    #[error("gluing map does not send facet {facet} to facet {other_facet}")]
    MapMismatch { facet: usize, other_facet: usize },
    #[error("gluing map is not a permutation of 0..{dim}")]
    NotAPermutation { dim: usize },
}

/// One facet gluing, stored with `(simplex, facet) < (other, other_facet)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub simplex: usize,
    pub facet: usize,
    pub other: usize,
    pub other_facet: usize,
    pub map: Perm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Partner {
    simplex: usize,
    facet: usize,
    map: Perm,
}

/// A d-dimensional triangulation: `size` abstract d-simplices and a partial
/// involutive pairing on their facet slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    dim: usize,
    size: usize,
    partners: Vec<Option<Partner>>,
}

impl Triangulation {
    /// `size` unglued d-simplices.
    pub fn new(dim: usize, size: usize) -> Result<Self, TriangulationError> {
        if dim == 0 {
            return Err(TriangulationError::BadDimension);
        }
        Ok(Triangulation {
            dim,
            size,
            partners: vec![None; size * (dim + 1)],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of top-dimensional simplices.
    pub fn size(&self) -> usize {
        self.size
    }

    fn slot(&self, simplex: usize, facet: usize) -> usize {
        simplex * (self.dim + 1) + facet
    }

    fn check_slot(&self, simplex: usize, facet: usize) -> Result<(), TriangulationError> {
        if simplex >= self.size {
            return Err(TriangulationError::SimplexOutOfRange {
                index: simplex,
                size: self.size,
            });
        }
        if facet > self.dim {
            return Err(TriangulationError::FacetOutOfRange { facet, dim: self.dim });
        }
        Ok(())
    }

    /// Glues facet `facet` of `simplex` to facet `other_facet` of `other`.
    ///
    /// Re-stating an existing gluing from the other side (with the inverse
    /// map) is accepted as a no-op.
    pub fn glue(
        &mut self,
        simplex: usize,
        facet: usize,
        other: usize,
        other_facet: usize,
        map: Perm,
    ) -> Result<(), TriangulationError> {
        self.check_slot(simplex, facet)?;
        self.check_slot(other, other_facet)?;
        if map.len() != self.dim + 1 {
            return Err(TriangulationError::NotAPermutation { dim: self.dim });
        }
        if simplex == other && facet == other_facet {
            return Err(TriangulationError::FacetGluedToItself { simplex, facet });
        }
        if map.apply(facet) != other_facet {
            return Err(TriangulationError::MapMismatch { facet, other_facet });
        }
        let a = self.slot(simplex, facet);
        let b = self.slot(other, other_facet);
        match (&self.partners[a], &self.partners[b]) {
            (None, None) => {}
            (Some(pa), Some(pb))
                if pa.simplex == other
                    && pa.facet == other_facet
                    && pa.map == map
                    && pb.simplex == simplex
                    && pb.facet == facet =>
            {
                return Ok(());
            }
            (Some(_), _) => return Err(TriangulationError::SlotInUse { simplex, facet }),
            (_, Some(_)) => {
                return Err(TriangulationError::SlotInUse {
                    simplex: other,
                    facet: other_facet,
                })
            }
        }
        let inverse = map.inverse();
        self.partners[a] = Some(Partner {
            simplex: other,
            facet: other_facet,
            map,
        });
        self.partners[b] = Some(Partner {
            simplex,
            facet,
            map: inverse,
        });
        Ok(())
    }

    /// The slot glued to `(simplex, facet)`, with the gluing map, if any.
    pub fn partner(&self, simplex: usize, facet: usize) -> Option<(usize, usize, &Perm)> {
        self.partners[self.slot(simplex, facet)]
            .as_ref()
            .map(|p| (p.simplex, p.facet, &p.map))
    }

    /// Every gluing once, ordered by its smaller slot.
    pub fn gluings(&self) -> Vec<Gluing> {
        let mut out = Vec::new();
        for s in 0..self.size {
            for f in 0..=self.dim {
                if let Some((t, g, map)) = self.partner(s, f) {
                    if (s, f) < (t, g) {
                        out.push(Gluing {
                            simplex: s,
                            facet: f,
                            other: t,
                            other_facet: g,
                            map: map.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn gluing_count(&self) -> usize {
        self.partners.iter().filter(|p| p.is_some()).count() / 2
    }

    /// Unglued `(simplex, facet)` slots.
    pub fn boundary_facets(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|s| (0..=self.dim).map(move |f| (s, f)))
            .filter(|&(s, f)| self.partner(s, f).is_none())
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.partners.iter().all(Option::is_some)
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<(), TriangulationError> {
        for s in 0..self.size {
            for f in 0..=self.dim {
                let Some((t, g, map)) = self.partner(s, f) else {
                    continue;
                };
                if t >= self.size || g > self.dim {
                    return Err(TriangulationError::SimplexOutOfRange {
                        index: t,
                        size: self.size,
                    });
                }
                if (s, f) == (t, g) {
                    return Err(TriangulationError::FacetGluedToItself { simplex: s, facet: f });
                }
                if map.apply(f) != g {
                    return Err(TriangulationError::MapMismatch {
                        facet: f,
                        other_facet: g,
                    });
                }
                match self.partner(t, g) {
                    Some((s2, f2, back)) if s2 == s && f2 == f && back.compose(map).is_identity() => {}
                    _ => return Err(TriangulationError::SlotInUse { simplex: t, facet: g }),
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Perm {
        Perm::from_images(images).unwrap()
    }

    #[test]
    fn glue_rejects_bad_inputs() {
        let mut t = Triangulation::new(2, 2).unwrap();
        assert_eq!(
            t.glue(0, 1, 0, 1, p(&[0, 1, 2])),
            Err(TriangulationError::FacetGluedToItself { simplex: 0, facet: 1 })
        );
        assert!(matches!(
            t.glue(0, 1, 1, 2, p(&[0, 1, 2])),
            Err(TriangulationError::MapMismatch { .. })
        ));
        assert!(matches!(
            t.glue(2, 0, 1, 0, p(&[0, 1, 2])),
            Err(TriangulationError::SimplexOutOfRange { .. })
        ));
        assert!(matches!(
            t.glue(0, 3, 1, 0, p(&[0, 1, 2])),
            Err(TriangulationError::FacetOutOfRange { .. })
        ));
        t.glue(0, 0, 1, 0, p(&[0, 2, 1])).unwrap();
        assert!(matches!(
            t.glue(0, 0, 1, 1, p(&[1, 0, 2])),
            Err(TriangulationError::SlotInUse { .. })
        ));
        // restating the same gluing from the far side is fine
        t.glue(1, 0, 0, 0, p(&[0, 2, 1])).unwrap();
        assert_eq!(t.gluing_count(), 1);
        t.validate().unwrap();
    }

    #[test]
    fn boundary_of_single_simplex() {
        let t = Triangulation::new(3, 1).unwrap();
        assert_eq!(t.boundary_facets().len(), 4);
        assert!(!t.is_closed());
        assert!(Triangulation::new(0, 1).is_err());
    }
}
