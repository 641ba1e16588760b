use super::{Prepared, StateSumError};
use crate::exactnum::{sqrt_power, Cyclotomic, Rational};
use crate::triangulation::{is_cocycle, CocycleZ2, Skeleton, EDGE_VERTICES};
use crate::tycat::{FusionData, Label, TYData};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// The state sum by direct enumeration, with its breakdown by the mod-2
/// cocycle of m-coloured edges.
#[derive(Debug, Clone)]
pub struct BruteResult {
    pub total: Cyclotomic,
    pub per_cocycle: BTreeMap<CocycleZ2, Cyclotomic>,
    pub admissible_colorings: u64,
}

struct Face {
    /// (edge class, sign) of edges ij, jk, ik for vertices i < j < k.
    edges: [(usize, i8); 3],
    last: usize,
}

fn local(cat: &TYData, l: Label, sign: i8) -> Label {
    if sign > 0 {
        l
    } else {
        cat.dual(l)
    }
}

fn faces(p: &Prepared) -> Vec<Face> {
    p.skel
        .face_rep
        .iter()
        .map(|&(t, f)| {
            let [i, j, k] = Skeleton::face_vertices(f);
            let slot = |a: usize, b: usize| EDGE_VERTICES.iter().position(|&x| x == (a, b)).unwrap();
            let edges = [slot(i, j), slot(j, k), slot(i, k)].map(|s| (p.skel.edge_of[t][s], p.skel.edge_sign[t][s]));
            let last = edges.iter().map(|e| e.0).max().unwrap();
            Face { edges, last }
        })
        .collect()
}

/// Sums over every admissible coloring of edge classes by simple objects.
/// Refuses when |labels|^|edges| exceeds `max_colorings`.
pub fn brute_force_state_sum(p: &Prepared, cat: &TYData, max_colorings: u64) -> Result<BruteResult, StateSumError> {
    let labels = cat.labels();
    let ne = p.skel.num_edges();
    let raw = (labels.len() as f64).powi(ne as i32);
    if raw > max_colorings as f64 {
        return Err(StateSumError::TooManyColorings { count: format!("{}^{}", labels.len(), ne), limit: max_colorings });
    }
    let faces = faces(p);
    let mut faces_at: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for (i, f) in faces.iter().enumerate() {
        faces_at[f.last].push(i);
    }
    let order = cat.order();
    let mut sums: BTreeMap<CocycleZ2, Cyclotomic> = BTreeMap::new();
    let mut theta = vec![Label::M; ne];
    let mut count = 0u64;
    // iterative depth-first enumeration; choice[e] indexes into labels
    let mut choice = vec![usize::MAX; ne];
    let mut e = 0usize;
    loop {
        if e == ne {
            count += 1;
            let mut w = Cyclotomic::one(order);
            for t in 0..p.tri.size() {
                let l = p.tet_labels(cat, t, &theta);
                w = &w * &cat.tet_weight(l, p.orientation.sign(t));
                if w.is_zero() {
                    return Err(StateSumError::Internal(format!("admissible coloring has zero weight at tetrahedron {t}")));
                }
            }
            let phi = CocycleZ2(theta.iter().map(|l| l.is_m()).collect());
            if !is_cocycle(&p.skel, &phi) {
                return Err(StateSumError::Internal(format!("projection {phi} is not a cocycle")));
            }
            let slot = sums.entry(phi).or_insert_with(|| Cyclotomic::zero(order));
            *slot += &w;
            e -= 1;
        }
        // advance edge e to its next label satisfying the faces it closes
        loop {
            choice[e] = choice[e].wrapping_add(1);
            if choice[e] >= labels.len() {
                break;
            }
            theta[e] = labels[choice[e]];
            let ok = faces_at[e].iter().all(|&fi| {
                let [(x, sx), (y, sy), (z, sz)] = faces[fi].edges;
                cat.fusion_coeff(local(cat, theta[x], sx), local(cat, theta[y], sy), local(cat, theta[z], sz)) == 1
            });
            if ok {
                break;
            }
        }
        if choice[e] >= labels.len() {
            choice[e] = usize::MAX;
            if e == 0 {
                break;
            }
            e -= 1;
        } else {
            e += 1;
        }
    }
    let a = cat.group_size() as u64;
    let dv = Rational::new(BigInt::from(1), BigInt::from(cat.global_dim()).pow(p.skel.num_vertices as u32));
    let mut total = Cyclotomic::zero(order);
    let mut per_cocycle = BTreeMap::new();
    for (phi, s) in sums {
        let em = phi.weight() as i64;
        let fmm = faces.iter().filter(|f| f.edges.iter().any(|&(x, _)| phi.get(x))).count() as i64;
        // edge dimensions and face normalisations carry the pivotal sign t_m
        let v = (&s * &sqrt_power(a, em - fmm, order)?).scale(&dv);
        let v = if cat.pivotal(Label::M) < 0 && (em + fmm) % 2 == 1 { -v } else { v };
        total += &v;
        per_cocycle.insert(phi, v);
    }
    Ok(BruteResult { total, per_cocycle, admissible_colorings: count })
}
