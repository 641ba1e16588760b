use super::{Skeleton, Triangulation, TriangulationError, EDGE_VERTICES};
use std::collections::VecDeque;

/// A sign per tetrahedron, +1 where the vertex order 0123 is positively oriented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation(pub Vec<i8>);

impl Orientation {
    pub fn sign(&self, tet: usize) -> i8 {
        self.0[tet]
    }
}

/// Orients every tetrahedron consistently, starting from tetrahedron 0 as +.
///
/// Neighbours across a gluing with permutation p need O(t') = -sign(p) O(t).
pub fn orient(tri: &Triangulation, skel: &Skeleton) -> Result<Orientation, TriangulationError> {
    let n = tri.size();
    let mut o = vec![0i8; n];
    let mut parent = vec![usize::MAX; n];
    o[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for f in 0..4 {
            let g = tri.gluing(t, f);
            let want = -o[t] * g.perm.sign();
            if o[g.tet] == 0 {
                o[g.tet] = want;
                parent[g.tet] = t;
                queue.push_back(g.tet);
            } else if o[g.tet] != want {
                return Err(TriangulationError::NonOrientable { cycle: cycle_through(&parent, t, g.tet) });
            }
        }
    }
    if let Some((tet, k)) = skel.reversed_edge {
        return Err(TriangulationError::ReversedEdge { tet, edge: EDGE_VERTICES[k] });
    }
    Ok(Orientation(o))
}

/// Tree path from `a` up to the common ancestor and back down to `b`.
fn cycle_through(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pa = path(a);
    let pb = path(b);
    let common = pa.iter().find(|x| pb.contains(x)).copied().unwrap_or(0);
    let mut cycle: Vec<usize> = pa.iter().take_while(|&&x| x != common).copied().collect();
    cycle.push(common);
    let down: Vec<usize> = pb.iter().take_while(|&&x| x != common).copied().collect();
    cycle.extend(down.into_iter().rev());
    cycle
}
