use super::{Skeleton, TriangulationError, EDGE_VERTICES};
use serde::{Serialize, Serializer};
use std::fmt;

/// A mod-2 one-cochain: one bit per edge class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocycleZ2(pub Vec<bool>);

impl CocycleZ2 {
    pub fn zero(edges: usize) -> Self {
        CocycleZ2(vec![false; edges])
    }

    pub fn get(&self, e: usize) -> bool {
        self.0[e]
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    fn xor_with(&mut self, other: &CocycleZ2) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

impl fmt::Display for CocycleZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CocycleZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CocycleZ2({self})")
    }
}

impl Serialize for CocycleZ2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A basis of the mod-2 cocycle space Z^1 and the first Betti number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleBasis {
    pub basis: Vec<CocycleZ2>,
    pub betti1: usize,
}

type Row = Vec<u64>;

fn bit(row: &Row, i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn flip(row: &mut Row, i: usize) {
    row[i / 64] ^= 1 << (i % 64);
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Row>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], c)) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, c) {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel(rows: &mut Vec<Row>, cols: usize) -> Vec<CocycleZ2> {
    let pivots = rref(rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![false; cols];
            v[free] = true;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = bit(&rows[r], free);
            }
            CocycleZ2(v)
        })
        .collect()
}

/// Basis of ker(delta: C^1 -> C^2) over Z/2, by elimination on the
/// face-by-edge coboundary matrix.
pub fn z2_cocycle_basis(skel: &Skeleton) -> CocycleBasis {
    let e = skel.num_edges();
    let words = e.div_ceil(64).max(1);
    let mut d1: Vec<Row> = skel
        .face_rep
        .iter()
        .map(|&(t, f)| {
            let mut row = vec![0u64; words];
            let [a, b, c] = Skeleton::face_vertices(f);
            for (i, j) in [(a, b), (b, c), (a, c)] {
                let k = EDGE_VERTICES.iter().position(|&x| x == (i, j)).unwrap();
                flip(&mut row, skel.edge_of[t][k]);
            }
            row
        })
        .collect();
    let basis = kernel(&mut d1, e);
    let vwords = skel.num_vertices.div_ceil(64).max(1);
    let mut d0: Vec<Row> = skel
        .edge_ends
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![0u64; vwords];
            flip(&mut row, a);
            flip(&mut row, b);
            row
        })
        .collect();
    let coboundaries = rref(&mut d0, skel.num_vertices).len();
    let betti1 = basis.len() - coboundaries;
    CocycleBasis { basis, betti1 }
}

/// All 2^dim cocycles, zero first, in Gray-code order.
pub fn enumerate_cocycles(basis: &CocycleBasis, edges: usize, limit: u64) -> Result<Vec<CocycleZ2>, TriangulationError> {
    let dim = basis.basis.len();
    if dim >= 63 || (1u64 << dim) > limit {
        return Err(TriangulationError::TooManyCocycles { count: format!("2^{dim}"), limit });
    }
    let mut cur = CocycleZ2::zero(edges);
    let mut out = vec![cur.clone()];
    for i in 1u64..(1 << dim) {
        cur.xor_with(&basis.basis[i.trailing_zeros() as usize]);
        out.push(cur.clone());
    }
    Ok(out)
}

/// True when phi sums to zero around every face.
pub fn is_cocycle(skel: &Skeleton, phi: &CocycleZ2) -> bool {
    skel.face_rep.iter().all(|&(t, f)| {
        let [a, b, c] = Skeleton::face_vertices(f);
        [(a, b), (b, c), (a, c)]
            .iter()
            .filter(|&&(i, j)| phi.get(skel.edge_of[t][super::skeleton::edge_slot(i, j)]))
            .count()
            % 2
            == 0
    })
}
