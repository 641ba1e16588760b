//! The Turaev-Viro-Barrett-Westbury state sum for TY categories, evaluated
//! both by brute-force enumeration of colorings and by partitioning the
//! colorings by their mod-2 shadow and evaluating each part as a Gauss sum.

mod brute;
mod fpt;

pub use brute::{brute_force_state_sum, BruteResult};
pub use fpt::{
    assemble_form, build_constraints, build_pair_system, classify_tetrahedra, invariant, partial_state_sum,
    project_phi, Constants, Constraints, InvariantOptions, InvariantResult, Pair, PairSystem, PartialSum, TetCounts,
    TetType,
};

use crate::exactnum::ExactError;
use crate::triangulation::{orient, skeleton, Orientation, Skeleton, Triangulation, TriangulationError};
use crate::tycat::{FusionData, Label, TYData};
use thiserror::Error;

/// Local edge slot of each model edge a=01, b=12, c=02, d=23, e=03, f=13.
pub const MODEL_SLOTS: [usize; 6] = [0, 3, 1, 5, 2, 4];

#[derive(Debug, Error)]
pub enum StateSumError {
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("{count} colorings exceed the limit of {limit}")]
    TooManyColorings { count: String, limit: u64 },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl StateSumError {
    /// True for refusals caused by a size limit rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            StateSumError::TooManyColorings { .. } | StateSumError::Triangulation(TriangulationError::TooManyCocycles { .. })
        )
    }
}

/// An oriented triangulation with its skeleton, ready for evaluation.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub tri: Triangulation,
    pub skel: Skeleton,
    pub orientation: Orientation,
}

impl Prepared {
    pub fn new(tri: Triangulation) -> Result<Self, TriangulationError> {
        let skel = skeleton(&tri);
        Self::with_skeleton(tri, skel)
    }

    /// Uses a skeleton whose canonical edge directions may have been changed.
    pub fn with_skeleton(tri: Triangulation, skel: Skeleton) -> Result<Self, TriangulationError> {
        let orientation = orient(&tri, &skel)?;
        Ok(Prepared { tri, skel, orientation })
    }

    /// Edge class and direction sign of each model edge of tetrahedron t.
    pub fn model_edges(&self, t: usize) -> [(usize, i8); 6] {
        MODEL_SLOTS.map(|k| (self.skel.edge_of[t][k], self.skel.edge_sign[t][k]))
    }

    /// Labels of the model edges of tetrahedron t under a coloring of edge
    /// classes: edges running against the canonical direction see the dual.
    pub fn tet_labels(&self, cat: &TYData, t: usize, theta: &[Label]) -> [Label; 6] {
        self.model_edges(t).map(|(e, s)| if s > 0 { theta[e] } else { cat.dual(theta[e]) })
    }
}

#[cfg(test)]
mod tests;
