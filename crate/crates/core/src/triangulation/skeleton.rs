use super::Triangulation;

/// Local edge slots of a tetrahedron, each directed from its lower vertex.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_slot(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    EDGE_VERTICES.iter().position(|&e| e == (a, b)).expect("distinct vertices")
}

/// Vertex, edge and face classes of a triangulation.
///
/// Every edge class carries a canonical direction: the lower-to-higher
/// direction of its representative, the least (tetrahedron, slot) pair in
/// the class. `edge_sign[t][k]` is +1 when slot k of tetrahedron t, read
/// lower to higher, runs along that direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub vertex_of: Vec<[usize; 4]>,
    pub edge_of: Vec<[usize; 6]>,
    pub edge_sign: Vec<[i8; 6]>,
    pub face_of: Vec<[usize; 4]>,
    /// Least (tetrahedron, slot) in each edge class.
    pub edge_rep: Vec<(usize, usize)>,
    /// Least (tetrahedron, face) in each face class.
    pub face_rep: Vec<(usize, usize)>,
    /// Vertex classes at the tail and head of each canonically directed edge.
    pub edge_ends: Vec<(usize, usize)>,
    pub num_vertices: usize,
    /// Some edge slot identified with itself in reverse, if any.
    pub reversed_edge: Option<(usize, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Dense renumbering of union-find roots in order of first appearance.
fn classes(uf: &mut UnionFind, items: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut ids = std::collections::HashMap::new();
    let out: Vec<usize> = items
        .map(|x| {
            let r = uf.find(x);
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect();
    let n = ids.len();
    (out, n)
}

pub fn skeleton(tri: &Triangulation) -> Skeleton {
    let n = tri.size();
    let mut vu = UnionFind::new(4 * n);
    // directed edges: id 12 t + 2 k + (0 forward, 1 backward)
    let mut eu = UnionFind::new(12 * n);
    let did = |t: usize, i: usize, j: usize| 12 * t + 2 * edge_slot(i, j) + usize::from(i > j);
    let mut fu = UnionFind::new(4 * n);
    for t in 0..n {
        for f in 0..4 {
            let g = tri.gluing(t, f);
            fu.union(4 * t + f, 4 * g.tet + g.perm.apply(f));
            for v in (0..4).filter(|&v| v != f) {
                vu.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
            }
            for &(i, j) in EDGE_VERTICES.iter().filter(|(i, j)| *i != f && *j != f) {
                let (pi, pj) = (g.perm.apply(i), g.perm.apply(j));
                eu.union(did(t, i, j), did(g.tet, pi, pj));
                eu.union(did(t, j, i), did(g.tet, pj, pi));
            }
        }
    }
    let (vflat, num_vertices) = classes(&mut vu, 0..4 * n);
    let vertex_of: Vec<[usize; 4]> = (0..n).map(|t| std::array::from_fn(|v| vflat[4 * t + v])).collect();

    let mut reversed_edge = None;
    // undirected class key: the smaller root of the two directions
    let mut edge_ids = std::collections::HashMap::new();
    let mut edge_rep = Vec::new();
    let mut edge_of = vec![[0usize; 6]; n];
    let mut edge_sign = vec![[0i8; 6]; n];
    for t in 0..n {
        for (k, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
            let fwd = eu.find(did(t, i, j));
            let bwd = eu.find(did(t, j, i));
            if fwd == bwd && reversed_edge.is_none() {
                reversed_edge = Some((t, k));
            }
            let key = fwd.min(bwd);
            let next = edge_rep.len();
            let id = *edge_ids.entry(key).or_insert_with(|| {
                edge_rep.push((t, k));
                next
            });
            edge_of[t][k] = id;
            let (rt, rk) = edge_rep[id];
            let (ri, rj) = EDGE_VERTICES[rk];
            edge_sign[t][k] = if fwd == eu.find(did(rt, ri, rj)) { 1 } else { -1 };
        }
    }
    let edge_ends = edge_rep
        .iter()
        .map(|&(t, k)| {
            let (i, j) = EDGE_VERTICES[k];
            (vertex_of[t][i], vertex_of[t][j])
        })
        .collect();

    let (fflat, _) = classes(&mut fu, 0..4 * n);
    let face_of: Vec<[usize; 4]> = (0..n).map(|t| std::array::from_fn(|f| fflat[4 * t + f])).collect();
    let mut face_rep = vec![(usize::MAX, 0); 2 * n];
    for t in 0..n {
        for f in 0..4 {
            let c = face_of[t][f];
            if face_rep[c].0 == usize::MAX {
                face_rep[c] = (t, f);
            }
        }
    }
    Skeleton { vertex_of, edge_of, edge_sign, face_of, edge_rep, face_rep, edge_ends, num_vertices, reversed_edge }
}

impl Skeleton {
    pub fn num_tetrahedra(&self) -> usize {
        self.edge_of.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_rep.len()
    }

    pub fn num_faces(&self) -> usize {
        self.face_rep.len()
    }

    /// Vertices of face `f` in increasing order.
    pub fn face_vertices(f: usize) -> [usize; 3] {
        let mut out = [0; 3];
        let mut k = 0;
        for v in (0..4).filter(|&v| v != f) {
            out[k] = v;
            k += 1;
        }
        out
    }

    /// Reverses the canonical direction of the chosen edge classes.
    pub fn with_flipped_edges(&self, flip: &[bool]) -> Skeleton {
        assert_eq!(flip.len(), self.num_edges());
        let mut s = self.clone();
        for t in 0..s.edge_of.len() {
            for k in 0..6 {
                if flip[s.edge_of[t][k]] {
                    s.edge_sign[t][k] = -s.edge_sign[t][k];
                }
            }
        }
        for (e, ends) in s.edge_ends.iter_mut().enumerate() {
            if flip[e] {
                *ends = (ends.1, ends.0);
            }
        }
        s
    }
}
