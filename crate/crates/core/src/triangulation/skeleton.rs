//! Face skeleton of a triangulation.
//!
//! Subfaces of the simplices are identified through a union-find whose union
//! edges carry vertex-correspondence permutations. Each node of the
//! union-find is a `(simplex, vertex subset)` pair with a local frame given by
//! the ascending order of its vertices; `to_parent` maps a node's local frame
//! into its parent's. When a gluing closes a cycle inside one class, the
//! composed permutation around the cycle is a self-map of the face, recorded
//! as a generator on the class root.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::Triangulation;
use crate::perm::Perm;

/// `(dimension, index)` of a face of the triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceRef {
    pub dim: usize,
    pub id: usize,
}

/// An i-face of the triangulation: an equivalence class of i-dimensional
/// subfaces of the simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub dim: usize,
    pub id: usize,
    /// `(simplex, embedding)` pairs, sorted; `embedding[t]` is the simplex
    /// vertex carrying face label `t`.
    pub instances: Vec<(usize, Vec<u8>)>,
    /// Index into `instances` of the instance defining the face labels: the
    /// ascending vertex tuple on the lexicographically least subset.
    pub canonical: usize,
}

impl Face {
    pub fn has_instance(&self, simplex: usize, embedding: &[u8]) -> bool {
        self.instances
            .binary_search_by(|(s, e)| (*s, e.as_slice()).cmp(&(simplex, embedding)))
            .is_ok()
    }

    pub fn face_ref(&self) -> FaceRef {
        FaceRef {
            dim: self.dim,
            id: self.id,
        }
    }

    /// Simplices containing this face, without repetition.
    pub fn simplices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.instances.iter().map(|(s, _)| *s).collect();
        set.into_iter().collect()
    }
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    dim: usize,
    size: usize,
    faces: Vec<Vec<Face>>,
    /// `slot_face[s][mask]`: id of the face containing the subset `mask` of
    /// simplex `s` (its dimension is `popcount(mask) - 1`).
    slot_face: Vec<Vec<u32>>,
    self_identified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SubfaceError {
    #[error("label sequence has length {len}, expected {expected}")]
    LengthMismatch { len: usize, expected: usize },
    #[error("face dimension {sub} is not below {sup}")]
    DimensionOrder { sub: usize, sup: usize },
    #[error("labels must be distinct and at most {max}")]
    BadLabels { max: usize },
    #[error("no face of dimension {dim} with index {id}")]
    UnknownFace { dim: usize, id: usize },
}

impl Skeleton {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of top-dimensional simplices of the underlying triangulation.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn faces(&self, dim: usize) -> &[Face] {
        &self.faces[dim]
    }

    pub fn face(&self, r: FaceRef) -> &Face {
        &self.faces[r.dim][r.id]
    }

    pub fn get_face(&self, r: FaceRef) -> Option<&Face> {
        self.faces.get(r.dim).and_then(|fs| fs.get(r.id))
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(i, fs)| {
                if i % 2 == 0 {
                    fs.len() as i64
                } else {
                    -(fs.len() as i64)
                }
            })
            .sum()
    }

    /// True when some face has two instances on the same simplex and vertex
    /// set with different embeddings.
    pub fn self_identified(&self) -> bool {
        self.self_identified
    }

    /// The face containing the given vertex subset of `simplex`.
    pub fn face_at(&self, simplex: usize, vertices: &[usize]) -> FaceRef {
        let mask = vertices.iter().fold(0usize, |m, &v| m | (1 << v));
        FaceRef {
            dim: vertices.len() - 1,
            id: self.slot_face[simplex][mask] as usize,
        }
    }

    /// Face id for a vertex bitmask of `simplex`.
    pub fn face_at_mask(&self, simplex: usize, mask: usize) -> FaceRef {
        FaceRef {
            dim: mask.count_ones() as usize - 1,
            id: self.slot_face[simplex][mask] as usize,
        }
    }

    /// All faces of `simplex` (every dimension, including the simplex
    /// itself), without repetition.
    pub fn faces_of_simplex(&self, simplex: usize) -> Vec<FaceRef> {
        let set: BTreeSet<FaceRef> = (1..1usize << (self.dim + 1))
            .map(|m| self.face_at_mask(simplex, m))
            .collect();
        set.into_iter().collect()
    }

    /// Whether vertices `0..=i` of `sub` correspond to vertices
    /// `pi[0..=i]` of `sup`, witnessed by some pair of instances on a common
    /// simplex.
    pub fn subface_holds(&self, sub: FaceRef, pi: &[usize], sup: FaceRef) -> Result<bool, SubfaceError> {
        let Some(f) = self.get_face(sub) else {
            return Err(SubfaceError::UnknownFace {
                dim: sub.dim,
                id: sub.id,
            });
        };
        let Some(g) = self.get_face(sup) else {
            return Err(SubfaceError::UnknownFace {
                dim: sup.dim,
                id: sup.id,
            });
        };
        if sub.dim >= sup.dim {
            return Err(SubfaceError::DimensionOrder {
                sub: sub.dim,
                sup: sup.dim,
            });
        }
        if pi.len() != sub.dim + 1 {
            return Err(SubfaceError::LengthMismatch {
                len: pi.len(),
                expected: sub.dim + 1,
            });
        }
        let distinct: HashSet<usize> = pi.iter().copied().collect();
        if distinct.len() != pi.len() || pi.iter().any(|&x| x > sup.dim) {
            return Err(SubfaceError::BadLabels { max: sup.dim });
        }
        Ok(self.subface_holds_unchecked(f, pi, g))
    }

    pub(crate) fn subface_holds_unchecked(&self, f: &Face, pi: &[usize], g: &Face) -> bool {
        let mut emb = vec![0u8; pi.len()];
        for (s, eg) in &g.instances {
            let mut mask = 0usize;
            for (t, &p) in pi.iter().enumerate() {
                emb[t] = eg[p];
                mask |= 1 << eg[p];
            }
            if self.slot_face[*s][mask] as usize == f.id && f.has_instance(*s, &emb) {
                return true;
            }
        }
        false
    }
}

struct LabelledUnionFind {
    parent: Vec<usize>,
    to_parent: Vec<Perm>,
    size: Vec<usize>,
    generators: Vec<Vec<Perm>>,
}

impl LabelledUnionFind {
    fn new(frames: Vec<usize>) -> Self {
        let n = frames.len();
        LabelledUnionFind {
            parent: (0..n).collect(),
            to_parent: frames.into_iter().map(Perm::identity).collect(),
            size: vec![1; n],
            generators: vec![Vec::new(); n],
        }
    }

    /// Root of `x` and the map from `x`'s frame into the root's frame.
    fn find(&mut self, x: usize) -> (usize, Perm) {
        let mut path = vec![x];
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
            path.push(r);
        }
        // walk back down, compressing
        let mut acc = Perm::identity(self.to_parent[x].len());
        for &node in path.iter().rev().skip(1) {
            acc = acc.compose(&self.to_parent[node]);
            self.to_parent[node] = acc.clone();
            self.parent[node] = r;
        }
        (r, self.to_parent_or_identity(x, r))
    }

    fn to_parent_or_identity(&self, x: usize, root: usize) -> Perm {
        if x == root {
            Perm::identity(self.to_parent[x].len())
        } else {
            self.to_parent[x].clone()
        }
    }

    /// Identifies `a` and `b`, where `map` sends `a`'s frame to `b`'s.
    fn union(&mut self, a: usize, b: usize, map: &Perm) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        let t = pb.compose(map).compose(&pa.inverse());
        if ra == rb {
            if !t.is_identity() && !self.generators[ra].contains(&t) {
                self.generators[ra].push(t);
            }
            return;
        }
        let (child, root, link) = if self.size[ra] <= self.size[rb] {
            (ra, rb, t)
        } else {
            (rb, ra, t.inverse())
        };
        let inv = link.inverse();
        let moved: Vec<Perm> = std::mem::take(&mut self.generators[child])
            .into_iter()
            .map(|g| link.compose(&g).compose(&inv))
            .collect();
        for g in moved {
            if !self.generators[root].contains(&g) {
                self.generators[root].push(g);
            }
        }
        self.parent[child] = root;
        self.to_parent[child] = link;
        self.size[root] += self.size[child];
    }
}

fn group_closure(n: usize, generators: &[Perm]) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(n);
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    out
}

fn mask_vertices(mask: usize) -> Vec<u8> {
    (0..usize::BITS as u8).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Computes the faces of every dimension as gluing-closure classes.
pub fn compute_skeleton(t: &Triangulation) -> Skeleton {
    let d = t.dim();
    let n = t.size();
    let masks = 1usize << (d + 1);
    let node = |s: usize, mask: usize| s * masks + mask;
    let frames: Vec<usize> = (0..n * masks)
        .map(|x| ((x % masks).count_ones() as usize).max(1))
        .collect();
    let mut uf = LabelledUnionFind::new(frames);

    for g in t.gluings() {
        let facet_mask = (masks - 1) & !(1 << g.facet);
        // every nonempty subset of the glued facet
        let mut sub = facet_mask;
        while sub != 0 {
            let verts = mask_vertices(sub);
            let image: Vec<usize> = verts.iter().map(|&v| g.map.apply(v as usize)).collect();
            let image_mask = image.iter().fold(0usize, |m, &v| m | (1 << v));
            let mut sorted_image = image.clone();
            sorted_image.sort_unstable();
            let local: Vec<usize> = image.iter().map(|v| sorted_image.binary_search(v).unwrap()).collect();
            let map = Perm::from_images(&local).unwrap();
            uf.union(node(g.simplex, sub), node(g.other, image_mask), &map);
            sub = (sub - 1) & facet_mask;
        }
    }

    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); d + 1];
    let mut slot_face = vec![vec![u32::MAX; masks]; n];
    let mut self_identified = false;

    for (dim, dim_faces) in faces.iter_mut().enumerate() {
        // group members by root; members are visited in (simplex, tuple) order
        let mut members_by_root: Vec<Vec<(usize, usize, Perm)>> = Vec::new();
        let mut class_of_root = std::collections::HashMap::new();
        let mut subset_masks: Vec<usize> = (1..masks).filter(|m| m.count_ones() as usize == dim + 1).collect();
        subset_masks.sort_by_key(|&m| mask_vertices(m));
        for s in 0..n {
            for &m in &subset_masks {
                let (r, q) = uf.find(node(s, m));
                let c = *class_of_root.entry(r).or_insert_with(|| {
                    members_by_root.push(Vec::new());
                    members_by_root.len() - 1
                });
                members_by_root[c].push((s, m, q));
            }
        }
        for members in members_by_root {
            let (_, root_mask, _) = &members[0];
            let root = uf.find(node(members[0].0, *root_mask)).0;
            let group = group_closure(dim + 1, &uf.generators[root]);
            if group.len() > 1 {
                self_identified = true;
            }
            let (_, _, q_c) = &members[0];
            let id = dim_faces.len();
            let mut instances = Vec::with_capacity(members.len() * group.len());
            for (s, m, q_n) in &members {
                let verts = mask_vertices(*m);
                let q_inv = q_n.inverse();
                for h in &group {
                    let emb: Vec<u8> = (0..=dim).map(|t| verts[q_inv.apply(h.apply(q_c.apply(t)))]).collect();
                    instances.push((*s, emb));
                }
                slot_face[*s][*m] = id as u32;
            }
            instances.sort();
            instances.dedup();
            let canon_s = members[0].0;
            let canon_e = mask_vertices(members[0].1);
            let canonical = instances
                .binary_search_by(|(s, e)| (*s, e.as_slice()).cmp(&(canon_s, canon_e.as_slice())))
                .expect("canonical instance present");
            dim_faces.push(Face {
                dim,
                id,
                instances,
                canonical,
            });
        }
    }

    Skeleton {
        dim: d,
        size: n,
        faces,
        slot_face,
        self_identified,
    }
}
