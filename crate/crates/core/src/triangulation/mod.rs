//! Closed 3-dimensional triangulations given by face gluings, with their
//! skeleta, orientations and mod-2 cocycles.
//!
//! Face `f` of a tetrahedron is the face opposite vertex `f`. A gluing
//! `(t', p)` on face `f` of tetrahedron `t` identifies vertex `v` of `t`
//! with vertex `p(v)` of `t'`, so face `f` meets face `p(f)` of `t'`.

mod cohomology;
mod orient;
mod perm;
mod skeleton;

pub use cohomology::{enumerate_cocycles, is_cocycle, z2_cocycle_basis, CocycleBasis, CocycleZ2};
pub use orient::{orient, Orientation};
pub use perm::Perm;
pub use skeleton::{edge_slot, skeleton, Skeleton, EDGE_VERTICES};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("malformed triangulation json: {0}")]
    Json(String),
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("declared {declared} tetrahedra but gluings lists {actual}")]
    CountMismatch { declared: usize, actual: usize },
    #[error("gluings[{tet}] has {got} faces, expected 4")]
    FaceCount { tet: usize, got: usize },
    #[error("gluings[{tet}][{face}] is missing: the triangulation is not closed")]
    Unglued { tet: usize, face: usize },
    #[error("gluings[{tet}][{face}] targets tetrahedron {target}, which does not exist")]
    TargetOutOfRange { tet: usize, face: usize, target: usize },
    #[error("gluings[{tet}][{face}] has permutation {perm:?}, which is not a permutation of 0..4")]
    NotAPermutation { tet: usize, face: usize, perm: Vec<i64> },
    #[error("gluings[{tet}][{face}] is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("gluings[{tet}][{face}] is not matched by the reverse gluing")]
    Inconsistent { tet: usize, face: usize },
    #[error("triangulation is disconnected: tetrahedron {unreached} is not reachable from tetrahedron 0")]
    Disconnected { unreached: usize },
    #[error("triangulation is not orientable, along the tetrahedron cycle {cycle:?}")]
    NonOrientable { cycle: Vec<usize> },
    #[error("edge {edge:?} of tetrahedron {tet} is identified with itself in reverse")]
    ReversedEdge { tet: usize, edge: (usize, usize) },
    #[error("{count} cocycles exceed the limit of {limit}")]
    TooManyCocycles { count: String, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm,
}

/// A closed, connected triangulation, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    tetrahedra: usize,
    gluings: Vec<Vec<Option<(usize, Vec<i64>)>>>,
}

impl Triangulation {
    /// Parses and validates the JSON gluing format.
    pub fn from_json(text: &str) -> Result<Self, TriangulationError> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| TriangulationError::Json(e.to_string()))?;
        if wire.tetrahedra != wire.gluings.len() {
            return Err(TriangulationError::CountMismatch { declared: wire.tetrahedra, actual: wire.gluings.len() });
        }
        let mut gluings = Vec::with_capacity(wire.gluings.len());
        for (tet, faces) in wire.gluings.iter().enumerate() {
            if faces.len() != 4 {
                return Err(TriangulationError::FaceCount { tet, got: faces.len() });
            }
            let mut row = [Gluing { tet: 0, perm: Perm::IDENTITY }; 4];
            for (face, entry) in faces.iter().enumerate() {
                let Some((target, perm)) = entry else {
                    return Err(TriangulationError::Unglued { tet, face });
                };
                let bad_perm = || TriangulationError::NotAPermutation { tet, face, perm: perm.clone() };
                let arr: [u8; 4] = match perm.as_slice() {
                    [a, b, c, d] => [*a, *b, *c, *d]
                        .map(|x| u8::try_from(x).unwrap_or(u8::MAX)),
                    _ => return Err(bad_perm()),
                };
                row[face] = Gluing { tet: *target, perm: Perm::new(arr).ok_or_else(bad_perm)? };
            }
            gluings.push(row);
        }
        Self::new(gluings)
    }

    pub fn to_json(&self) -> String {
        let wire = Wire {
            tetrahedra: self.size(),
            gluings: self
                .gluings
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|g| Some((g.tet, g.perm.images().iter().map(|&x| x as i64).collect())))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("serializable")
    }

    pub fn new(gluings: Vec<[Gluing; 4]>) -> Result<Self, TriangulationError> {
        let n = gluings.len();
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        for (tet, row) in gluings.iter().enumerate() {
            for (face, g) in row.iter().enumerate() {
                if g.tet >= n {
                    return Err(TriangulationError::TargetOutOfRange { tet, face, target: g.tet });
                }
                let back_face = g.perm.apply(face);
                if g.tet == tet && back_face == face {
                    return Err(TriangulationError::SelfGluedFace { tet, face });
                }
                let back = gluings[g.tet][back_face];
                if back.tet != tet || back.perm != g.perm.inverse() {
                    return Err(TriangulationError::Inconsistent { tet, face });
                }
            }
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(t) = stack.pop() {
            for g in &gluings[t] {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    stack.push(g.tet);
                }
            }
        }
        if let Some(unreached) = seen.iter().position(|s| !s) {
            return Err(TriangulationError::Disconnected { unreached });
        }
        Ok(Triangulation { gluings })
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    /// Renumbers tetrahedra and their vertices: old tetrahedron `t` becomes
    /// `tet_map[t]`, and its vertex `v` becomes vertex `vertex_maps[t](v)`.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm]) -> Triangulation {
        let n = self.size();
        assert_eq!(tet_map.len(), n);
        assert_eq!(vertex_maps.len(), n);
        let mut out = vec![[Gluing { tet: 0, perm: Perm::IDENTITY }; 4]; n];
        for t in 0..n {
            let phi = vertex_maps[t];
            for f in 0..4 {
                let g = self.gluings[t][f];
                let perm = vertex_maps[g.tet].compose(&g.perm).compose(&phi.inverse());
                out[tet_map[t]][phi.apply(f)] = Gluing { tet: tet_map[g.tet], perm };
            }
        }
        Triangulation::new(out).expect("relabelling preserves validity")
    }
}
